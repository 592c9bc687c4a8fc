// Copyright 2026 The Perfo Authors
// SPDX-License-Identifier: Apache-2.0

#include "perfo/state_file.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>

#include "perfo/error.hpp"

namespace perfo {

namespace {

void put_u16(std::string& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xFF));
  out.push_back(static_cast<char>(v >> 8));
}

void put_u32(std::string& out, std::uint32_t v) {
  for (int shift = 0; shift < 32; shift += 8) out.push_back(static_cast<char>((v >> shift) & 0xFF));
}

class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  bool has(std::size_t n) const { return bytes_.size() - pos_ >= n; }
  std::size_t remaining() const { return bytes_.size() - pos_; }

  std::uint32_t u32() {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(byte(pos_ + i)) << (8 * i);
    pos_ += 4;
    return v;
  }
  std::uint16_t u16() {
    const auto v = static_cast<std::uint16_t>(byte(pos_) | byte(pos_ + 1) << 8);
    pos_ += 2;
    return v;
  }
  std::string_view take(std::size_t n) {
    const auto out = bytes_.substr(pos_, n);
    pos_ += n;
    return out;
  }

 private:
  std::uint32_t byte(std::size_t at) const { return static_cast<unsigned char>(bytes_[at]); }

  std::string_view bytes_;
  std::size_t pos_ = 0;
};

[[noreturn]] void truncated(const std::string& where) {
  throw Error(ErrorCode::kTruncatedFile, "HST1 file truncated " + where);
}

}  // namespace

PointCloud StateTensor::slice(std::size_t epoch) const {
  if (epoch >= n_epochs) {
    throw Error(ErrorCode::kEpochOutOfRange, "epoch " + std::to_string(epoch) + " out of range for '" +
                                                 sentence_id + "' with " + std::to_string(n_epochs) +
                                                 " epochs");
  }
  std::vector<double> coords;
  coords.reserve(static_cast<std::size_t>(n_tokens) * state_dim);
  std::vector<std::int64_t> labels;
  for (std::size_t t = 0; t < n_tokens; ++t) {
    for (std::size_t i = 0; i < state_dim; ++i) coords.push_back(at(t, i, epoch));
    labels.push_back(static_cast<std::int64_t>(t));
  }
  return PointCloud(state_dim, std::move(coords), std::move(labels));
}

std::string serialize_state(std::span<const StateTensor> tensors) {
  std::string out(kStateMagic, 4);
  put_u32(out, kStateVersion);
  if (tensors.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw Error(ErrorCode::kInvalidArgument, "too many tensors for HST1");
  }
  put_u32(out, static_cast<std::uint32_t>(tensors.size()));
  for (const StateTensor& t : tensors) {
    if (t.sentence_id.size() > std::numeric_limits<std::uint16_t>::max()) {
      throw Error(ErrorCode::kInvalidArgument, "sentence id longer than 65535 bytes");
    }
    if (t.state_dim == 0 || t.n_epochs == 0) {
      throw Error(ErrorCode::kInvalidArgument, "state_dim and n_epochs must be >= 1 for '" +
                                                   t.sentence_id + "'");
    }
    const std::size_t expected = static_cast<std::size_t>(t.n_tokens) * t.state_dim * t.n_epochs;
    if (t.data.size() != expected) {
      throw Error(ErrorCode::kInvalidArgument,
                  "tensor '" + t.sentence_id + "' holds " + std::to_string(t.data.size()) +
                      " values, shape needs " + std::to_string(expected));
    }
    put_u16(out, static_cast<std::uint16_t>(t.sentence_id.size()));
    out += t.sentence_id;
    put_u32(out, t.n_tokens);
    put_u32(out, t.state_dim);
    put_u32(out, t.n_epochs);
    out.reserve(out.size() + expected * 4);
    for (float v : t.data) {
      if (!std::isfinite(v)) {
        throw Error(ErrorCode::kNonFiniteValue, "non-finite value in '" + t.sentence_id + "'");
      }
      put_u32(out, std::bit_cast<std::uint32_t>(v));
    }
  }
  return out;
}

std::vector<StateTensor> parse_state(std::string_view bytes) {
  Reader in(bytes);
  if (!in.has(4) || std::memcmp(bytes.data(), kStateMagic, 4) != 0) {
    throw Error(ErrorCode::kBadMagic, "not an HST1 file (bad magic bytes)");
  }
  in.take(4);
  if (!in.has(8)) truncated("in header");
  const std::uint32_t version = in.u32();
  if (version != kStateVersion) {
    throw Error(ErrorCode::kBadMagic, "unsupported HST1 version " + std::to_string(version));
  }
  const std::uint32_t count = in.u32();

  std::vector<StateTensor> tensors;
  for (std::uint32_t k = 0; k < count; ++k) {
    const std::string where = "in tensor " + std::to_string(k);
    if (!in.has(2)) truncated(where + " header");
    const std::uint16_t id_len = in.u16();
    if (!in.has(id_len)) truncated(where + " sentence id");
    StateTensor t;
    t.sentence_id = std::string(in.take(id_len));
    if (!in.has(12)) truncated("in header of sentence '" + t.sentence_id + "'");
    t.n_tokens = in.u32();
    t.state_dim = in.u32();
    t.n_epochs = in.u32();
    if (t.state_dim == 0 || t.n_epochs == 0) {
      throw Error(ErrorCode::kShapeMismatch,
                  "sentence '" + t.sentence_id + "' declares a zero state_dim or n_epochs");
    }
    std::size_t values = 0, payload = 0;
    if (__builtin_mul_overflow(static_cast<std::size_t>(t.n_tokens), t.state_dim, &values) ||
        __builtin_mul_overflow(values, t.n_epochs, &values) ||
        __builtin_mul_overflow(values, std::size_t{4}, &payload)) {
      throw Error(ErrorCode::kShapeMismatch, "shape of sentence '" + t.sentence_id + "' overflows");
    }
    if (!in.has(payload)) {
      throw Error(ErrorCode::kTruncatedFile,
                  "HST1 payload of sentence '" + t.sentence_id + "' truncated: needs " +
                      std::to_string(payload) + " bytes, " + std::to_string(in.remaining()) +
                      " remain");
    }
    t.data.resize(values);
    for (std::size_t i = 0; i < values; ++i) {
      const float v = std::bit_cast<float>(in.u32());
      if (!std::isfinite(v)) {
        throw Error(ErrorCode::kNonFiniteValue, "non-finite value in sentence '" + t.sentence_id + "'");
      }
      t.data[i] = v;
    }
    tensors.push_back(std::move(t));
  }
  if (in.remaining() != 0) {
    throw Error(ErrorCode::kShapeMismatch,
                std::to_string(in.remaining()) + " trailing bytes after the declared tensors");
  }
  return tensors;
}

std::vector<StateTensor> read_state_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  const std::string bytes((std::istreambuf_iterator<char>(file)), std::istreambuf_iterator<char>());
  return parse_state(bytes);
}

void write_state_file(std::span<const StateTensor> tensors, const std::string& path) {
  const std::string bytes = serialize_state(tensors);
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorCode::kIo, "cannot write '" + path + "'");
  file.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!file) throw Error(ErrorCode::kIo, "write to '" + path + "' failed");
}

StateTensor tensor_from_cloud(const PointCloud& cloud, std::string sentence_id) {
  StateTensor t;
  t.sentence_id = std::move(sentence_id);
  t.n_tokens = static_cast<std::uint32_t>(cloud.size());
  t.state_dim = static_cast<std::uint32_t>(cloud.dim());
  t.n_epochs = 1;
  t.data.reserve(cloud.coords().size());
  for (double v : cloud.coords()) t.data.push_back(static_cast<float>(v));
  return t;
}


PointCloud parse_cloud_text(std::string_view text) {
  std::vector<std::vector<double>> rows;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t end = text.find('\n');
    std::string line(text.substr(0, end));
    text = end == std::string_view::npos ? std::string_view{} : text.substr(end + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::replace(line.begin(), line.end(), ',', ' ');
    std::vector<double> row;
    const char* cursor = line.c_str();
    while (true) {
      while (*cursor == ' ' || *cursor == '\t' || *cursor == '\r') ++cursor;
      if (*cursor == '\0') break;
      char* stop = nullptr;
      const double value = std::strtod(cursor, &stop);
      if (stop == cursor) {
        throw Error(ErrorCode::kInvalidArgument, "line " + std::to_string(line_no) + ": not a number");
      }
      row.push_back(value);
      cursor = stop;
    }
    if (row.empty()) continue;
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw Error(ErrorCode::kInvalidArgument, "line " + std::to_string(line_no) + " has " +
                                                   std::to_string(row.size()) + " values, expected " +
                                                   std::to_string(rows.front().size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error(ErrorCode::kInvalidArgument, "no points in cloud text");
  return PointCloud::from_rows(rows);
}

PointCloud read_cloud_file(const std::string& path, const std::string& sentence_id,
                           std::size_t epoch) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  const std::string bytes((std::istreambuf_iterator<char>(file)), std::istreambuf_iterator<char>());
  if (bytes.size() < 4 || bytes.compare(0, 4, kStateMagic, 4) != 0) return parse_cloud_text(bytes);
  const auto tensors = parse_state(bytes);
  if (tensors.empty()) throw Error(ErrorCode::kInvalidArgument, "'" + path + "' holds no sentences");
  if (sentence_id.empty()) return tensors.front().slice(epoch);
  for (const StateTensor& t : tensors) {
    if (t.sentence_id == sentence_id) return t.slice(epoch);
  }
  throw Error(ErrorCode::kInvalidArgument, "no sentence '" + sentence_id + "' in '" + path + "'");
}

}  // namespace perfo
