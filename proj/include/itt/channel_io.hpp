#pragma once

// Plain-text channel and joint-source files.
//
//   # comment
//   dmc 2 2
//   0.9 0.1
//   0.1 0.9
//
// A joint-source file uses the header "src <|X|> <|Y|>" and its entries sum to
// one over the whole table instead of per row.

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "itt/types_core.hpp"

namespace itt {

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Channel read_channel(std::istream& in, const std::string& source = "<input>");
Channel read_channel_file(const std::string& path);
JointDist read_joint_source(std::istream& in, const std::string& source = "<input>");
JointDist read_joint_source_file(const std::string& path);

// 17 significant digits, so reading back reproduces every entry exactly.
void write_channel(std::ostream& out, const Channel& w);
void write_joint_source(std::ostream& out, const JointDist& q);

}  // namespace itt
