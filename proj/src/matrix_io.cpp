#include "hapd/matrix_io.hpp"

#include "hapd/errors.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace hapd {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_matrix_section(std::ostream& out, const std::string& name, const MatX& m) {
    out << "[" << name << "]\n" << m.rows() << " " << m.cols() << "\n";
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) out << " ";
            out << format_double(m(i, j));
        }
        out << "\n";
    }
}

void write_kv_section_header(std::ostream& out, const std::string& name) {
    out << "[" << name << "]\n";
}

namespace {
std::string strip(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}
}  // namespace

SectionedFile SectionedFile::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path, 0, "cannot open file");

    SectionedFile f;
    f.path_ = path;

    std::string line;
    int lineno = 0;
    Section* current = nullptr;
    std::string current_name;
    int expected_rows = -1, expected_cols = -1;
    int filled_rows = 0;

    auto check_complete = [&]() {
        if (current && current->is_matrix && filled_rows != expected_rows)
            throw ParseError(path, lineno,
                             "section [" + current_name + "] truncated: got " +
                                 std::to_string(filled_rows) + " of " +
                                 std::to_string(expected_rows) + " rows");
    };

    while (std::getline(in, line)) {
        ++lineno;
        if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
        line = strip(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') throw ParseError(path, lineno, "unterminated section header");
            check_complete();
            current_name = strip(line.substr(1, line.size() - 2));
            if (current_name.empty()) throw ParseError(path, lineno, "empty section name");
            auto [it, inserted] = f.sections_.emplace(current_name, Section{});
            if (!inserted)
                throw ParseError(path, lineno, "duplicate section [" + current_name + "]");
            current = &it->second;
            current->line = lineno;
            expected_rows = expected_cols = -1;
            filled_rows = 0;
            continue;
        }
        if (!current) throw ParseError(path, lineno, "content before first section header");

        if (line.find('=') != std::string::npos && expected_rows < 0) {
            auto eq = line.find('=');
            const std::string key = strip(line.substr(0, eq));
            const std::string val = strip(line.substr(eq + 1));
            if (key.empty() || val.empty()) throw ParseError(path, lineno, "malformed 'key = value'");
            if (current->is_matrix)
                throw ParseError(path, lineno, "key-value line inside matrix section");
            if (!current->kv.emplace(key, val).second)
                throw ParseError(path, lineno, "duplicate key '" + key + "'");
            continue;
        }

        std::istringstream row(line);
        if (expected_rows < 0) {
            if (!current->kv.empty())
                throw ParseError(path, lineno, "matrix data inside key-value section");
            if (!(row >> expected_rows >> expected_cols) || expected_rows < 0 ||
                expected_cols < 0)
                throw ParseError(path, lineno, "expected 'rows cols' dimension line");
            std::string extra;
            if (row >> extra) throw ParseError(path, lineno, "trailing tokens after dimensions");
            current->is_matrix = true;
            current->mat.resize(expected_rows, expected_cols);
            filled_rows = 0;
            continue;
        }

        if (filled_rows >= expected_rows)
            throw ParseError(path, lineno, "extra matrix row in section [" + current_name + "]");
        for (int j = 0; j < expected_cols; ++j) {
            std::string tok;
            if (!(row >> tok))
                throw ParseError(path, lineno,
                                 "row has fewer than " + std::to_string(expected_cols) +
                                     " entries");
            char* end = nullptr;
            const double v = std::strtod(tok.c_str(), &end);
            if (end == tok.c_str() || *end != '\0')
                throw ParseError(path, lineno, "not a number: '" + tok + "'");
            current->mat(filled_rows, j) = v;
        }
        std::string extra;
        if (row >> extra) throw ParseError(path, lineno, "row has too many entries");
        ++filled_rows;
    }
    ++lineno;
    check_complete();
    return f;
}

bool SectionedFile::has_section(const std::string& name) const {
    return sections_.count(name) != 0;
}

const MatX& SectionedFile::matrix(const std::string& name) const {
    auto it = sections_.find(name);
    if (it == sections_.end()) throw ParseError(path_, 0, "missing section [" + name + "]");
    if (!it->second.is_matrix)
        throw ParseError(path_, it->second.line, "section [" + name + "] is not a matrix");
    return it->second.mat;
}

std::string SectionedFile::value(const std::string& section, const std::string& key) const {
    auto it = sections_.find(section);
    if (it == sections_.end()) throw ParseError(path_, 0, "missing section [" + section + "]");
    auto kv = it->second.kv.find(key);
    if (kv == it->second.kv.end())
        throw ParseError(path_, it->second.line,
                         "missing key '" + key + "' in section [" + section + "]");
    return kv->second;
}

double SectionedFile::value_double(const std::string& section, const std::string& key) const {
    const std::string raw = value(section, key);
    char* end = nullptr;
    const double v = std::strtod(raw.c_str(), &end);
    if (end == raw.c_str() || *end != '\0')
        throw ParseError(path_, 0, "key '" + key + "' in [" + section + "] is not a number");
    return v;
}

}  // namespace hapd
