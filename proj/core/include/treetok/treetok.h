// Copyright 2026 The treetok Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TREETOK_TREETOK_H_
#define TREETOK_TREETOK_H_

#include "treetok/bpe.h"
#include "treetok/config.h"
#include "treetok/error.h"
#include "treetok/fallback_tree.h"
#include "treetok/metrics.h"
#include "treetok/parse_tree.h"
#include "treetok/segmenter.h"
#include "treetok/treeio.h"
#include "treetok/utf8.h"
#include "treetok/vocab_builder.h"
#include "treetok/vocabulary.h"

#endif  // TREETOK_TREETOK_H_
