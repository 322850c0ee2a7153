// SPDX-License-Identifier: Apache-2.0
//
// infocus: wideband near-field beamforming for circular phased arrays
// Copyright (C) 2026 The infocus authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef INFOCUS_INFOCUS_HPP
#define INFOCUS_INFOCUS_HPP

#include "infocus/beam_design.hpp"
#include "infocus/channel.hpp"
#include "infocus/constants.hpp"
#include "infocus/geometry.hpp"
#include "infocus/link_rate.hpp"
#include "infocus/parallel.hpp"

#endif  // INFOCUS_INFOCUS_HPP
