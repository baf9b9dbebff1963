// src/base/io-util.h

// Copyright 2026  The lingstruct Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef LINGSTRUCT_BASE_IO_UTIL_H_
#define LINGSTRUCT_BASE_IO_UTIL_H_

#include <string>

namespace lingstruct {

/// Reads a whole file; throws Error if it cannot be opened.
std::string ReadFileToString(const std::string &path);

/// Writes to "<path>.tmp" then renames over path, so readers never observe a
/// partially written file.
void WriteFileAtomic(const std::string &path, const std::string &contents);

}  // namespace lingstruct

#endif  // LINGSTRUCT_BASE_IO_UTIL_H_
