// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The uwbjio Authors
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

#pragma once

#include "uwbjio/jio_nsg.hpp"
#include "uwbjio/types.hpp"

namespace uwbjio
{

/// MRC over all resolved paths, which in the chip-rate model is the matched filter p^H r.
SymbolOutput rake_mrc(const CVector& r, const CVector& p_hat);

} // namespace uwbjio
