// sublm.hpp
//
// Umbrella header for the sublm toolkit.

// Copyright 2026 The sublm authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABILITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef SUBLM_SUBLM_HPP
#define SUBLM_SUBLM_HPP

#include "sublm/arpa.hpp"
#include "sublm/corpus.hpp"
#include "sublm/counts.hpp"
#include "sublm/error.hpp"
#include "sublm/eval.hpp"
#include "sublm/interp.hpp"
#include "sublm/manifest.hpp"
#include "sublm/mkn.hpp"
#include "sublm/numerals.hpp"
#include "sublm/rules.hpp"
#include "sublm/scorer.hpp"
#include "sublm/srt.hpp"
#include "sublm/textnorm.hpp"
#include "sublm/unicode.hpp"
#include "sublm/zio.hpp"

#endif  // SUBLM_SUBLM_HPP
