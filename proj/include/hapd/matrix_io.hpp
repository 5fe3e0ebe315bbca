#pragma once

#include "hapd/types.hpp"

#include <map>
#include <ostream>
#include <string>

namespace hapd {

// Sectioned plain-text container used by the model and NLDI archives.
//
//   [NAME]            matrix section:
//   rows cols
//   <row of cols full-precision decimals>
//   ...
//
//   [META]            key-value section:
//   key = value
//
// '#' starts a comment. Matrices are row-major, printed with %.17g so a
// write/read cycle reproduces every double bit-exactly.
class SectionedFile {
public:
    static SectionedFile load(const std::string& path);

    bool has_section(const std::string& name) const;
    // Throws ParseError if absent or not of the requested kind.
    const MatX& matrix(const std::string& name) const;
    std::string value(const std::string& section, const std::string& key) const;
    double value_double(const std::string& section, const std::string& key) const;

    const std::string& path() const { return path_; }

private:
    struct Section {
        bool is_matrix = false;
        MatX mat;
        std::map<std::string, std::string> kv;
        int line = 0;
    };
    std::string path_;
    std::map<std::string, Section> sections_;
};

void write_matrix_section(std::ostream& out, const std::string& name, const MatX& m);
void write_kv_section_header(std::ostream& out, const std::string& name);

// Full-precision decimal formatting used across all text outputs.
std::string format_double(double v);

}  // namespace hapd
