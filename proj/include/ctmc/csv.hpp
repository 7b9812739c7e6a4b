#ifndef CTMC_CSV_HPP
#define CTMC_CSV_HPP

#include <cstdio>
#include <string>
#include <vector>

namespace ctmc {

// RFC-4180 CSV: header row, '.' decimal separator, %.12g precision.
class CsvWriter {
public:
    static std::string field(const std::string& s) {
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string out = "\"";
        for (char ch : s) {
            if (ch == '"') out += '"';
            out += ch;
        }
        out += '"';
        return out;
    }

    static std::string number(double v, const char* fmt = "%.12g") {
        char buf[64];
        std::snprintf(buf, sizeof buf, fmt, v);
        return buf;
    }

    void row(const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) text_ += ',';
            text_ += field(fields[i]);
        }
        text_ += "\r\n";
    }

    const std::string& str() const { return text_; }

private:
    std::string text_;
};

} // namespace ctmc

#endif
