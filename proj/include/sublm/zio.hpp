// zio.hpp
//
// File reading that transparently handles gzip. zlib's gzopen reads plain
// files unchanged, so one code path covers both.

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

#ifndef SUBLM_ZIO_HPP
#define SUBLM_ZIO_HPP

#include <zlib.h>

#include <filesystem>
#include <string>

#include "sublm/error.hpp"

namespace sublm {

inline std::string read_file_auto(const std::filesystem::path& path) {
  gzFile f = gzopen(path.string().c_str(), "rb");
  if (!f) throw UnreadableFile("cannot open " + path.string());
  std::string out;
  char buf[1 << 16];
  int n;
  while ((n = gzread(f, buf, sizeof(buf))) > 0) {
    out.append(buf, static_cast<std::size_t>(n));
  }
  if (n < 0) {
    int errnum = 0;
    const char* msg = gzerror(f, &errnum);
    std::string reason = msg ? msg : "read error";
    gzclose(f);
    throw UnreadableFile("error reading " + path.string() + ": " + reason);
  }
  gzclose(f);
  return out;
}

}  // namespace sublm

#endif  // SUBLM_ZIO_HPP
