#include "leader/codec.hpp"

#include <algorithm>

namespace leader {

namespace {

void check_lambda(int lambda) {
  if (lambda < 2 || lambda > 10) throw CodecError("lambda must be in 2..10");
}

std::string digits(std::uint64_t x, int lambda) {
  if (x == 0) return "0";
  std::string d;
  while (x) {
    d.push_back(static_cast<char>('0' + x % lambda));
    x /= lambda;
  }
  std::reverse(d.begin(), d.end());
  return d;
}

}  // namespace

// every digit d becomes the pair (1,d); the pair prefix after a comma is
// dropped and the comma itself becomes 0
std::string encode_sequence(const std::vector<std::uint64_t>& seq, int lambda) {
  check_lambda(lambda);
  std::string out;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    auto d = digits(seq[i], lambda);
    for (std::size_t j = 0; j < d.size(); ++j) {
      out.push_back(i > 0 && j == 0 ? '0' : '1');
      out.push_back(d[j]);
    }
  }
  return out;
}

std::vector<std::uint64_t> decode_sequence(const std::string& s, int lambda) {
  check_lambda(lambda);
  if (s.size() % 2) throw CodecError("odd length code");
  std::vector<std::uint64_t> out;
  for (std::size_t i = 0; i < s.size(); i += 2) {
    char tag = s[i];
    int d = s[i + 1] - '0';
    if (d < 0 || d >= lambda) throw CodecError("digit out of range");
    if (tag == '0') {
      if (out.empty()) throw CodecError("separator before first number");
      out.push_back(static_cast<std::uint64_t>(d));
    } else if (tag == '1') {
      if (out.empty()) {
        out.push_back(static_cast<std::uint64_t>(d));
      } else {
        auto& x = out.back();
        if (x > (UINT64_MAX - d) / lambda) throw CodecError("number overflows");
        x = x * lambda + d;
      }
    } else {
      throw CodecError("bad pair prefix");
    }
  }
  return out;
}

std::string encode_ports(const std::vector<int>& ports, int lambda) {
  std::vector<std::uint64_t> seq(ports.begin(), ports.end());
  return encode_sequence(seq, lambda);
}

std::vector<int> decode_ports(const std::string& s, int lambda) {
  auto seq = decode_sequence(s, lambda);
  std::vector<int> out;
  out.reserve(seq.size());
  for (auto x : seq) {
    if (x > 1u << 30) throw CodecError("port too large");
    out.push_back(static_cast<int>(x));
  }
  return out;
}

std::string insert_separators(const std::string& s, int k) {
  if (k < 1) throw CodecError("block length must be positive");
  std::string out;
  out.reserve(s.size() + s.size() / k);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i > 0 && i % k == 0) out.push_back('0');
    out.push_back(s[i]);
  }
  return out;
}

std::string remove_separators(const std::string& s, int k) {
  if (k < 1) throw CodecError("block length must be positive");
  std::string out;
  std::size_t stride = static_cast<std::size_t>(k) + 1;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i % stride == static_cast<std::size_t>(k)) {
      if (s[i] != '0') throw CodecError("separator expected at position " + std::to_string(i));
      if (i + 1 == s.size()) throw CodecError("dangling separator");
      continue;
    }
    out.push_back(s[i]);
  }
  return out;
}

std::string pack_record(const UnboundedAdviceRecord& r) {
  if (r.m1 < 0 || r.m1 > 3 || (r.m2 & ~1) || (r.m3 & ~1)) throw CodecError("record field out of range");
  std::string out = "0";
  out.push_back(r.m1 & 2 ? '1' : '0');
  out.push_back(r.m1 & 1 ? '1' : '0');
  out.push_back(static_cast<char>('0' + r.m2));
  out.push_back(static_cast<char>('0' + r.m3));
  return out + r.c;
}

UnboundedAdviceRecord unpack_record(const std::string& s) {
  if (s.size() < 5) throw CodecError("record shorter than 5 symbols");
  for (int i = 0; i < 5; ++i)
    if (s[i] != '0' && s[i] != '1') throw CodecError("record header must be binary");
  if (s[0] != '0') throw CodecError("m1 exceeds 3");
  UnboundedAdviceRecord r;
  r.m1 = (s[1] - '0') * 2 + (s[2] - '0');
  r.m2 = s[3] - '0';
  r.m3 = s[4] - '0';
  r.c = s.substr(5);
  return r;
}

}  // namespace leader
