#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace leader {

class CodecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// symbols are stored as digit chars; '0' is c1 and '1' is c2
std::string encode_sequence(const std::vector<std::uint64_t>& seq, int lambda);
std::vector<std::uint64_t> decode_sequence(const std::string& s, int lambda);

// convenience for port paths
std::string encode_ports(const std::vector<int>& ports, int lambda);
std::vector<int> decode_ports(const std::string& s, int lambda);

std::string insert_separators(const std::string& s, int k);
std::string remove_separators(const std::string& s, int k);

struct UnboundedAdviceRecord {
  int m1 = 0;
  int m2 = 0;
  int m3 = 0;
  std::string c;
  bool operator==(const UnboundedAdviceRecord&) const = default;
};

std::string pack_record(const UnboundedAdviceRecord& r);
UnboundedAdviceRecord unpack_record(const std::string& s);

}  // namespace leader
