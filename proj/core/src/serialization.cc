// Copyright 2026 The Truecase Authors.
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

#include "truecase/serialization.h"

#include <cstring>
#include <fstream>
#include <sstream>

#include "truecase/error.h"
#include "truecase/io.h"

namespace truecase {
namespace {

template <typename U>
void PutLe(U v, std::string* out) {
  for (std::size_t i = 0; i < sizeof(U); ++i) {
    out->push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
  }
}

template <typename F, typename U>
U Bits(F f) {
  static_assert(sizeof(F) == sizeof(U));
  U u;
  std::memcpy(&u, &f, sizeof(U));
  return u;
}

template <typename F, typename U>
F FromBits(U u) {
  F f;
  std::memcpy(&f, &u, sizeof(F));
  return f;
}

std::size_t ElementSize(DType d) {
  switch (d) {
    case DType::kF32:
      return 4;
    case DType::kF64:
      return 8;
    case DType::kI8:
      return 1;
  }
  return 0;
}

class Reader {
 public:
  explicit Reader(std::string_view bytes, std::size_t base = 0)
      : bytes_(bytes), base_(base) {}

  std::size_t offset() const { return base_ + pos_; }
  bool done() const { return pos_ == bytes_.size(); }

  std::string_view Take(std::size_t n, const char* what) {
    if (bytes_.size() - pos_ < n) {
      Fail(std::string("truncated ") + what + ": need " + std::to_string(n) +
           " bytes, " + std::to_string(bytes_.size() - pos_) + " left");
    }
    std::string_view s = bytes_.substr(pos_, n);
    pos_ += n;
    return s;
  }

  template <typename U>
  U Get(const char* what) {
    std::string_view s = Take(sizeof(U), what);
    U v = 0;
    for (std::size_t i = 0; i < sizeof(U); ++i) {
      v |= static_cast<U>(static_cast<unsigned char>(s[i])) << (8 * i);
    }
    return v;
  }

  [[noreturn]] void Fail(const std::string& msg) const {
    throw Error(ErrorCode::kFormat,
                "at byte offset " + std::to_string(offset()) + ": " + msg);
  }

 private:
  std::string_view bytes_;
  std::size_t base_;
  std::size_t pos_ = 0;
};

}  // namespace

template <typename T>
StoredTensor StoredTensor::FromMatrix(const Matrix<T>& m, DType dtype) {
  if (dtype == DType::kI8) return FromQuantized(Quantize(m));
  StoredTensor t;
  t.dtype = dtype;
  t.rows = static_cast<std::uint32_t>(m.rows());
  t.cols = static_cast<std::uint32_t>(m.cols());
  t.data.reserve(m.size() * ElementSize(dtype));
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    if (dtype == DType::kF32) {
      PutLe(Bits<float, std::uint32_t>(static_cast<float>(m.data()[i])), &t.data);
    } else {
      PutLe(Bits<double, std::uint64_t>(static_cast<double>(m.data()[i])),
            &t.data);
    }
  }
  return t;
}

StoredTensor StoredTensor::FromQuantized(const QuantizedTensor& q) {
  StoredTensor t;
  t.dtype = DType::kI8;
  t.rows = static_cast<std::uint32_t>(q.rows);
  t.cols = static_cast<std::uint32_t>(q.cols);
  t.scale = q.scale;
  t.data.assign(reinterpret_cast<const char*>(q.values.data()), q.values.size());
  return t;
}

template <typename T>
Matrix<T> StoredTensor::ToMatrix() const {
  Matrix<T> m(rows, cols);
  const std::size_t n = static_cast<std::size_t>(rows) * cols;
  const auto* b = reinterpret_cast<const unsigned char*>(data.data());
  for (std::size_t i = 0; i < n; ++i) {
    switch (dtype) {
      case DType::kF32: {
        std::uint32_t u = 0;
        for (int k = 0; k < 4; ++k) u |= std::uint32_t{b[4 * i + k]} << (8 * k);
        m.data()[i] = static_cast<T>(FromBits<float>(u));
        break;
      }
      case DType::kF64: {
        std::uint64_t u = 0;
        for (int k = 0; k < 8; ++k) u |= std::uint64_t{b[8 * i + k]} << (8 * k);
        m.data()[i] = static_cast<T>(FromBits<double>(u));
        break;
      }
      case DType::kI8:
        m.data()[i] = static_cast<T>(static_cast<std::int8_t>(b[i])) *
                      static_cast<T>(scale);
        break;
    }
  }
  return m;
}

template StoredTensor StoredTensor::FromMatrix<float>(const Matrix<float>&,
                                                      DType);
template StoredTensor StoredTensor::FromMatrix<double>(const Matrix<double>&,
                                                       DType);
template Matrix<float> StoredTensor::ToMatrix<float>() const;
template Matrix<double> StoredTensor::ToMatrix<double>() const;

std::string SerializeModelFile(const ModelFile& file) {
  std::string out(kModelMagic);
  PutLe<std::uint32_t>(kModelFormatVersion, &out);
  // nlohmann::json keeps object keys sorted, so dump() is canonical.
  const std::string header = file.header.dump();
  PutLe<std::uint64_t>(header.size(), &out);
  out += header;
  PutLe<std::uint32_t>(static_cast<std::uint32_t>(file.tensors.size()), &out);
  for (const auto& t : file.tensors) {
    std::string blob;
    blob.push_back(static_cast<char>(t.dtype));
    blob.append(3, '\0');
    PutLe(t.rows, &blob);
    PutLe(t.cols, &blob);
    if (t.dtype == DType::kI8) PutLe(Bits<float, std::uint32_t>(t.scale), &blob);
    blob += t.data;
    PutLe<std::uint64_t>(blob.size(), &out);
    out += blob;
  }
  return out;
}

ModelFile ParseModelFile(std::string_view bytes) {
  Reader r(bytes);
  if (r.Take(kModelMagic.size(), "magic") != kModelMagic) {
    throw Error(ErrorCode::kFormat, "at byte offset 0: bad magic");
  }
  const auto version = r.Get<std::uint32_t>("version");
  if (version != kModelFormatVersion) {
    r.Fail("unsupported format version " + std::to_string(version));
  }
  const auto header_len = r.Get<std::uint64_t>("header length");
  const std::size_t header_at = r.offset();
  std::string_view header = r.Take(header_len, "header");
  ModelFile file;
  try {
    file.header = nlohmann::json::parse(header);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kFormat, "at byte offset " +
                                        std::to_string(header_at) +
                                        ": bad header JSON: " + e.what());
  }
  const auto count = r.Get<std::uint32_t>("tensor count");
  for (std::uint32_t i = 0; i < count; ++i) {
    const auto blob_len = r.Get<std::uint64_t>("blob length");
    const std::size_t blob_at = r.offset();
    Reader b(r.Take(blob_len, "tensor blob"), blob_at);
    StoredTensor t;
    const auto dtype = b.Get<std::uint8_t>("dtype");
    if (dtype < 1 || dtype > 3) {
      b.Fail("bad dtype " + std::to_string(dtype));
    }
    t.dtype = static_cast<DType>(dtype);
    b.Take(3, "reserved bytes");
    t.rows = b.Get<std::uint32_t>("rows");
    t.cols = b.Get<std::uint32_t>("cols");
    if (t.dtype == DType::kI8) {
      t.scale = FromBits<float>(b.Get<std::uint32_t>("scale"));
    }
    const std::size_t n =
        static_cast<std::size_t>(t.rows) * t.cols * ElementSize(t.dtype);
    t.data = std::string(b.Take(n, "tensor data"));
    if (!b.done()) {
      b.Fail("trailing bytes in tensor " + std::to_string(i));
    }
    file.tensors.push_back(std::move(t));
  }
  if (!r.done()) r.Fail("trailing bytes after last tensor");
  return file;
}

std::string ReadFileBytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteModelFile(const std::string& path, const ModelFile& file) {
  WriteFileBytes(path, SerializeModelFile(file));
}

ModelFile ReadModelFile(const std::string& path) {
  return ParseModelFile(ReadFileBytes(path));
}

}  // namespace truecase
