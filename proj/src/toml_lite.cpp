#include "toml_lite.hpp"

#include <cctype>

namespace g2d::toml {

long Value::as_int() const {
    if (!is_int()) throw std::invalid_argument("expected an integer");
    return std::get<long>(v);
}

bool Value::as_bool() const {
    if (!std::holds_alternative<bool>(v)) throw std::invalid_argument("expected a boolean");
    return std::get<bool>(v);
}

const std::string& Value::as_string() const {
    if (!is_string()) throw std::invalid_argument("expected a string");
    return std::get<std::string>(v);
}

const Array& Value::as_array() const {
    if (!is_array()) throw std::invalid_argument("expected an array");
    return std::get<Array>(v);
}

namespace {

class Parser {
public:
    explicit Parser(const std::string& text) : s_(text) {}

    Document document() {
        Document doc;
        while (true) {
            skip_blank_lines();
            if (eof()) break;
            const std::string key = parse_key();
            skip_inline_space();
            expect('=');
            skip_inline_space();
            Value value = parse_value();
            skip_inline_space();
            skip_comment();
            if (!eof() && peek() != '\n') fail("trailing characters after value");
            if (doc.count(key)) fail("duplicate key '" + key + "'");
            doc.emplace(key, std::move(value));
        }
        return doc;
    }

private:
    const std::string& s_;
    std::size_t pos_ = 0;
    int line_ = 1;

    bool eof() const { return pos_ >= s_.size(); }
    char peek() const { return s_[pos_]; }
    char get() {
        const char c = s_[pos_++];
        if (c == '\n') ++line_;
        return c;
    }
    [[noreturn]] void fail(const std::string& what) const { throw parse_error(what, line_); }
    void expect(char c) {
        if (eof() || peek() != c) fail(std::string("expected '") + c + "'");
        get();
    }
    void skip_inline_space() {
        while (!eof() && (peek() == ' ' || peek() == '\t' || peek() == '\r')) get();
    }
    void skip_comment() {
        if (!eof() && peek() == '#')
            while (!eof() && peek() != '\n') get();
    }
    void skip_blank_lines() {
        while (!eof()) {
            skip_inline_space();
            skip_comment();
            if (!eof() && peek() == '\n')
                get();
            else
                break;
        }
    }
    // whitespace, newlines and comments inside arrays
    void skip_array_space() {
        while (!eof()) {
            skip_inline_space();
            skip_comment();
            if (!eof() && peek() == '\n')
                get();
            else
                break;
        }
    }

    std::string parse_key() {
        if (!eof() && peek() == '[') fail("tables are not supported");
        std::string key;
        while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' || peek() == '-'))
            key += get();
        if (key.empty()) fail("expected a bare key");
        return key;
    }

    Value parse_value() {
        if (eof()) fail("missing value");
        const char c = peek();
        if (c == '"') return Value{parse_string()};
        if (c == '[') return Value{parse_array()};
        if (c == 't' || c == 'f') {
            std::string word;
            while (!eof() && std::isalpha(static_cast<unsigned char>(peek()))) word += get();
            if (word == "true") return Value{true};
            if (word == "false") return Value{false};
            fail("unknown literal '" + word + "'");
        }
        if (c == '-' || c == '+' || std::isdigit(static_cast<unsigned char>(c))) {
            std::string num;
            num += get();
            while (!eof() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '_'))
                if (get() != '_') num += s_[pos_ - 1];
            if (!eof() && (peek() == '.' || peek() == 'e' || peek() == 'E')) fail("floats are not supported");
            try {
                return Value{std::stol(num)};
            } catch (const std::exception&) {
                fail("malformed integer '" + num + "'");
            }
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    std::string parse_string() {
        expect('"');
        std::string out;
        while (true) {
            if (eof() || peek() == '\n') fail("unterminated string");
            const char c = get();
            if (c == '"') break;
            if (c == '\\') {
                if (eof()) fail("unterminated escape");
                const char e = get();
                switch (e) {
                    case 'n': out += '\n'; break;
                    case 't': out += '\t'; break;
                    case '"': out += '"'; break;
                    case '\\': out += '\\'; break;
                    default: fail(std::string("unsupported escape \\") + e);
                }
            } else {
                out += c;
            }
        }
        return out;
    }

    Array parse_array() {
        expect('[');
        Array out;
        skip_array_space();
        while (!eof() && peek() != ']') {
            out.push_back(parse_value());
            skip_array_space();
            if (!eof() && peek() == ',') {
                get();
                skip_array_space();
            } else if (!eof() && peek() != ']') {
                fail("expected ',' or ']' in array");
            }
        }
        expect(']');
        return out;
    }
};

}  // namespace

Document parse(const std::string& text) { return Parser(text).document(); }

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        if (c == '\n') {
            out += "\\n";
            continue;
        }
        out += c;
    }
    return out + "\"";
}

}  // namespace g2d::toml
