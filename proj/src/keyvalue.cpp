#include "hapd/keyvalue.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace hapd {

namespace {

std::string trim(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

}  // namespace

KeyValueFile KeyValueFile::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path, 0, "cannot open file");
    std::stringstream buf;
    buf << in.rdbuf();
    return from_string(buf.str(), path);
}

KeyValueFile KeyValueFile::from_string(const std::string& text, const std::string& label) {
    KeyValueFile f;
    f.path_ = label;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ParseError(label, lineno, "unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()) throw ParseError(label, lineno, "empty section name");
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError(label, lineno, "expected 'key = value'");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ParseError(label, lineno, "empty key");
        if (value.empty()) throw ParseError(label, lineno, "empty value for key '" + key + "'");
        if (!section.empty()) key = section + "." + key;
        auto [it, inserted] = f.entries_.emplace(key, Entry{value, lineno, false});
        if (!inserted)
            throw ParseError(label, lineno,
                             "duplicate key '" + key + "' (first at line " +
                                 std::to_string(it->second.line) + ")");
    }
    return f;
}

bool KeyValueFile::has(const std::string& key) const { return entries_.count(key) != 0; }

const KeyValueFile::Entry& KeyValueFile::fetch(const std::string& key) {
    auto it = entries_.find(key);
    if (it == entries_.end()) throw ParseError(path_, 0, "missing required key '" + key + "'");
    it->second.consumed = true;
    return it->second;
}

double KeyValueFile::get_double(const std::string& key) {
    const Entry& e = fetch(key);
    char* end = nullptr;
    double v = std::strtod(e.raw.c_str(), &end);
    if (end == e.raw.c_str() || *end != '\0')
        throw ParseError(path_, e.line, "key '" + key + "': not a number: '" + e.raw + "'");
    return v;
}

int KeyValueFile::get_int(const std::string& key) {
    const Entry& e = fetch(key);
    char* end = nullptr;
    long v = std::strtol(e.raw.c_str(), &end, 10);
    if (end == e.raw.c_str() || *end != '\0')
        throw ParseError(path_, e.line, "key '" + key + "': not an integer: '" + e.raw + "'");
    return static_cast<int>(v);
}

std::string KeyValueFile::get_string(const std::string& key) { return fetch(key).raw; }

std::vector<double> KeyValueFile::get_vector(const std::string& key, int expected_size) {
    const Entry& e = fetch(key);
    std::istringstream in(e.raw);
    std::vector<double> out;
    std::string tok;
    while (in >> tok) {
        char* end = nullptr;
        double v = std::strtod(tok.c_str(), &end);
        if (end == tok.c_str() || *end != '\0')
            throw ParseError(path_, e.line, "key '" + key + "': not a number: '" + tok + "'");
        out.push_back(v);
    }
    if (expected_size >= 0 && static_cast<int>(out.size()) != expected_size)
        throw ParseError(path_, e.line,
                         "key '" + key + "': expected " + std::to_string(expected_size) +
                             " values, got " + std::to_string(out.size()));
    return out;
}

double KeyValueFile::get_double_or(const std::string& key, double fallback) {
    return has(key) ? get_double(key) : fallback;
}

int KeyValueFile::get_int_or(const std::string& key, int fallback) {
    return has(key) ? get_int(key) : fallback;
}

std::string KeyValueFile::get_string_or(const std::string& key, const std::string& fallback) {
    return has(key) ? get_string(key) : fallback;
}

void KeyValueFile::finish() const {
    for (const auto& [key, entry] : entries_) {
        if (!entry.consumed)
            throw ParseError(path_, entry.line, "unknown key '" + key + "'");
    }
}

int KeyValueFile::line_of(const std::string& key) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? 0 : it->second.line;
}

}  // namespace hapd
