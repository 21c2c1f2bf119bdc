// common/io.h

// Copyright 2026 The duotrain Authors
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

#ifndef DUOTRAIN_COMMON_IO_H_
#define DUOTRAIN_COMMON_IO_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace duotrain {

std::string ReadFileToString(const std::string& path);
void WriteStringToFile(const std::string& path, const std::string& content);

std::vector<std::string> ReadLines(const std::string& path);

// Little-endian binary helpers for the on-disk tensor/feature formats.
void WriteU32(std::ostream& os, uint32_t v);
uint32_t ReadU32(std::istream& is);
void WriteBytes(std::ostream& os, const void* data, size_t n);
void ReadBytes(std::istream& is, void* data, size_t n);
void WriteF32Array(std::ostream& os, const float* data, size_t n);
void ReadF32Array(std::istream& is, float* data, size_t n);

std::vector<std::string> SplitTabs(const std::string& line);
std::vector<std::string> SplitWhitespace(const std::string& s);
std::string ToUpperAscii(std::string s);
std::string ToLowerAscii(std::string s);

bool FileExists(const std::string& path);
void EnsureDir(const std::string& path);

}  // namespace duotrain

#endif  // DUOTRAIN_COMMON_IO_H_
