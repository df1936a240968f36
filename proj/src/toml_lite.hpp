#pragma once
// Just enough TOML for space files: top-level `key = value` pairs whose values are
// basic strings, integers, booleans or (nested, possibly multi-line) arrays.
// Tables, dates, floats and literal strings are rejected.

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace g2d::toml {

struct Value;
using Array = std::vector<Value>;

struct Value {
    std::variant<long, bool, std::string, Array> v;

    bool is_int() const { return std::holds_alternative<long>(v); }
    bool is_string() const { return std::holds_alternative<std::string>(v); }
    bool is_array() const { return std::holds_alternative<Array>(v); }
    long as_int() const;
    bool as_bool() const;
    const std::string& as_string() const;
    const Array& as_array() const;
};

class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& what, int line)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

using Document = std::map<std::string, Value>;

Document parse(const std::string& text);
std::string quote(const std::string& s);

}  // namespace g2d::toml
