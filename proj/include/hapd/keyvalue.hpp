#pragma once

#include "hapd/errors.hpp"

#include <map>
#include <string>
#include <vector>

namespace hapd {

// Strict reader for the flat key-value text files used across the toolkit
// (parameters, coefficient tables, run config, scenarios).
//
// Syntax:
//   # comment (also after values)
//   [section]          -> keys below are prefixed "section."
//   key = value        -> value is a scalar, a word, or a space-separated list
//
// Every key must be consumed by the caller; finish() rejects unknown keys so
// typos surface as errors instead of silently-ignored settings.
class KeyValueFile {
public:
    static KeyValueFile load(const std::string& path);
    static KeyValueFile from_string(const std::string& text, const std::string& label = "<string>");

    bool has(const std::string& key) const;

    double get_double(const std::string& key);
    int get_int(const std::string& key);
    std::string get_string(const std::string& key);
    std::vector<double> get_vector(const std::string& key, int expected_size = -1);

    // Optional variants fall back to the default without consuming anything.
    double get_double_or(const std::string& key, double fallback);
    int get_int_or(const std::string& key, int fallback);
    std::string get_string_or(const std::string& key, const std::string& fallback);

    // Throws ParseError naming the first unconsumed (unknown) key.
    void finish() const;

    int line_of(const std::string& key) const;
    const std::string& path() const { return path_; }

private:
    struct Entry {
        std::string raw;
        int line = 0;
        bool consumed = false;
    };

    const Entry& fetch(const std::string& key);

    std::string path_;
    std::map<std::string, Entry> entries_;
};

}  // namespace hapd
