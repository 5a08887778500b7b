#include "hankelcos/report.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

namespace hankelcos::report {

Summary VerificationReport::summary() const {
    Summary s;
    s.count = records.size();
    for (const Record& r : records) {
        if (r.pass)
            ++s.pass_count;
        else
            ++s.fail_count;
        s.max_gap = std::max(s.max_gap, r.gap);
    }
    return s;
}

bool VerificationReport::all_pass() const {
    for (const Record& r : records)
        if (!r.pass) return false;
    return true;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string to_csv(const VerificationReport& report) {
    std::string out = "k_re,k_im,w_re,w_im,method,value_re,value_im,err_est,gap,pass\n";
    for (const Record& r : report.records) {
        out += format_double(r.k.real());
        out += ',';
        out += format_double(r.k.imag());
        out += ',';
        out += format_double(r.w.real());
        out += ',';
        out += format_double(r.w.imag());
        out += ',';
        out += r.method;
        out += ',';
        out += format_double(r.value.real());
        out += ',';
        out += format_double(r.value.imag());
        out += ',';
        out += format_double(r.err_est);
        out += ',';
        out += format_double(r.gap);
        out += ',';
        out += r.pass ? '1' : '0';
        out += '\n';
    }
    return out;
}

std::string to_json(const VerificationReport& report) {
    nlohmann::ordered_json j;
    j["records"] = nlohmann::ordered_json::array();
    for (const Record& r : report.records) {
        nlohmann::ordered_json rec;
        rec["k_re"] = r.k.real();
        rec["k_im"] = r.k.imag();
        rec["w_re"] = r.w.real();
        rec["w_im"] = r.w.imag();
        rec["method"] = r.method;
        rec["value_re"] = r.value.real();
        rec["value_im"] = r.value.imag();
        rec["err_est"] = r.err_est;
        rec["gap"] = r.gap;
        rec["pass"] = r.pass;
        j["records"].push_back(std::move(rec));
    }
    const Summary s = report.summary();
    j["summary"] = {{"count", s.count},
                    {"pass_count", s.pass_count},
                    {"fail_count", s.fail_count},
                    {"max_gap", s.max_gap}};
    return j.dump(2) + "\n";
}

VerificationReport parse_csv(const std::string& text) {
    VerificationReport report;
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line))
        throw DomainError("empty CSV report");
    if (line != "k_re,k_im,w_re,w_im,method,value_re,value_im,err_est,gap,pass")
        throw DomainError("unexpected CSV header");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::string cur;
        for (char c : line) {
            if (c == ',') {
                fields.push_back(cur);
                cur.clear();
            } else {
                cur += c;
            }
        }
        fields.push_back(cur);
        if (fields.size() != 10)
            throw DomainError("malformed CSV record");
        auto num = [](const std::string& s) { return std::strtod(s.c_str(), nullptr); };
        Record r;
        r.k = Complex(num(fields[0]), num(fields[1]));
        r.w = Complex(num(fields[2]), num(fields[3]));
        r.method = fields[4];
        r.value = Complex(num(fields[5]), num(fields[6]));
        r.err_est = num(fields[7]);
        r.gap = num(fields[8]);
        r.pass = fields[9] == "1";
        report.records.push_back(std::move(r));
    }
    return report;
}

void emit_report(const VerificationReport& report, Format format, const std::string& path) {
    const std::string body = format == Format::csv ? to_csv(report) : to_json(report);
    if (path == "-" || path.empty()) {
        std::cout << body;
        std::cout.flush();
        if (!std::cout)
            throw IoError("failed to write report to stdout");
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open report file: " + path);
    out << body;
    out.flush();
    if (!out)
        throw IoError("failed to write report file: " + path);
}

} // namespace hankelcos::report
