#ifndef HANKELCOS_REPORT_HPP
#define HANKELCOS_REPORT_HPP

#include <string>
#include <vector>

#include "hankelcos/types.hpp"

namespace hankelcos::report {

struct Record {
    Complex k;
    Complex w;
    std::string method; // "closed", "quad", "green", "hankel", ...
    Complex value;
    double err_est = 0.0;
    double gap = 0.0;
    bool pass = true;
};

struct Summary {
    std::size_t count = 0;
    std::size_t pass_count = 0;
    std::size_t fail_count = 0;
    double max_gap = 0.0;
};

struct VerificationReport {
    std::vector<Record> records;
    /// Wall time is diagnostic only; it is never serialized so that reports
    /// stay byte-identical for identical configs.
    double wall_ms = 0.0;

    Summary summary() const;
    bool all_pass() const;
};

enum class Format { csv, json };

/// CSV columns, exactly in this order:
///   k_re,k_im,w_re,w_im,method,value_re,value_im,err_est,gap,pass
/// one header row, 17 significant digits, pass as 1/0.
std::string to_csv(const VerificationReport& report);

/// JSON mirror: {"records": [...], "summary": {...}} with the same fields.
std::string to_json(const VerificationReport& report);

/// Inverse of to_csv; round-trips byte-identically through to_csv.
VerificationReport parse_csv(const std::string& text);

/// Serialize to path ("-" = stdout).  Throws IoError on filesystem failure.
void emit_report(const VerificationReport& report, Format format, const std::string& path);

/// 17-significant-digit decimal rendering used by the CSV emitter.
std::string format_double(double v);

} // namespace hankelcos::report

#endif
