/*
 * Copyright 2026 The pdflow Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "pdflow/flow_io.hpp"

#include <bit>
#include <cstdio>
#include <memory>

namespace pdflow {

static_assert(std::endian::native == std::endian::little,
              "flo I/O assumes a little-endian host");

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const { std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const std::string& path, const char* mode) {
  FilePtr f(std::fopen(path.c_str(), mode));
  if (!f) throw IoError("cannot open '" + path + "'");
  return f;
}

constexpr int kMaxFloDimension = 99999;

}  // namespace

FlowField read_flo(const std::string& path) {
  FilePtr f = open_file(path, "rb");

  float magic = 0.0f;
  if (std::fread(&magic, sizeof(float), 1, f.get()) != 1) {
    throw IoError("'" + path + "': truncated header");
  }
  if (magic != kFloMagic) {
    throw IoError("'" + path + "': bad magic value " + std::to_string(magic) +
                  " (expected " + std::to_string(kFloMagic) + ")");
  }
  std::int32_t w = 0, h = 0;
  if (std::fread(&w, sizeof(w), 1, f.get()) != 1 ||
      std::fread(&h, sizeof(h), 1, f.get()) != 1) {
    throw IoError("'" + path + "': truncated header");
  }
  if (w <= 0 || h <= 0 || w > kMaxFloDimension || h > kMaxFloDimension) {
    throw IoError("'" + path + "': implausible dimensions " + std::to_string(w) + "x" +
                  std::to_string(h));
  }

  const std::size_t n = static_cast<std::size_t>(w) * h;
  std::vector<float> raw(n * 2);
  if (std::fread(raw.data(), sizeof(float), raw.size(), f.get()) != raw.size()) {
    throw IoError("'" + path + "': short file (flow data truncated)");
  }

  FlowField flow(w, h);
  for (std::size_t i = 0; i < n; ++i) {
    flow.u1.data()[i] = raw[2 * i];
    flow.u2.data()[i] = raw[2 * i + 1];
  }
  return flow;
}

void write_flo(const std::string& path, const FlowField& flow) {
  FilePtr f = open_file(path, "wb");

  const std::int32_t w = flow.width(), h = flow.height();
  const std::size_t n = static_cast<std::size_t>(w) * h;
  std::vector<float> raw(n * 2);
  for (std::size_t i = 0; i < n; ++i) {
    raw[2 * i] = static_cast<float>(flow.u1.data()[i]);
    raw[2 * i + 1] = static_cast<float>(flow.u2.data()[i]);
  }

  if (std::fwrite(&kFloMagic, sizeof(float), 1, f.get()) != 1 ||
      std::fwrite(&w, sizeof(w), 1, f.get()) != 1 ||
      std::fwrite(&h, sizeof(h), 1, f.get()) != 1 ||
      std::fwrite(raw.data(), sizeof(float), raw.size(), f.get()) != raw.size()) {
    throw IoError("'" + path + "': write failed");
  }
}

FlowField flow_with_unknown(const FlowField& flow, const std::vector<std::uint8_t>& valid) {
  if (valid.size() != flow.u1.size()) {
    throw std::invalid_argument("flow_with_unknown: mask size mismatch");
  }
  FlowField out = flow;
  for (std::size_t i = 0; i < valid.size(); ++i) {
    if (valid[i] == 0) {
      out.u1.data()[i] = kUnknownFlowValue;
      out.u2.data()[i] = kUnknownFlowValue;
    }
  }
  return out;
}

std::vector<std::uint8_t> mask_from_sentinels(const FlowField& flow) {
  std::vector<std::uint8_t> mask(flow.u1.size());
  for (std::size_t i = 0; i < mask.size(); ++i) {
    mask[i] = flow_value_unknown(flow.u1.data()[i], flow.u2.data()[i]) ? 0 : 1;
  }
  return mask;
}

}  // namespace pdflow
