// Copyright (c) 2026 The toepeig developers.
// SPDX-License-Identifier: Apache-2.0

#ifndef TOEPEIG_TOEPEIG_HPP
#define TOEPEIG_TOEPEIG_HPP

#include "toepeig/cache.hpp"
#include "toepeig/eigensolver.hpp"
#include "toepeig/errors.hpp"
#include "toepeig/extreme.hpp"
#include "toepeig/inner.hpp"
#include "toepeig/matrix.hpp"
#include "toepeig/pipeline.hpp"
#include "toepeig/scalar.hpp"
#include "toepeig/symbol.hpp"
#include "toepeig/toeplitz.hpp"

#endif  // TOEPEIG_TOEPEIG_HPP
