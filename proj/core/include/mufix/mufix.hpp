//  Copyright 2026 The mufix Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.

#ifndef MUFIX_MUFIX_HPP_
#define MUFIX_MUFIX_HPP_

#include "mufix/bekic.hpp"
#include "mufix/error.hpp"
#include "mufix/fixpoint.hpp"
#include "mufix/lattice.hpp"
#include "mufix/monofn.hpp"
#include "mufix/muexpr.hpp"

#endif  // MUFIX_MUFIX_HPP_
