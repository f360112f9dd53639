#include "wmdisc/emit.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <ostream>

#include <json.hpp>

namespace wmdisc {

namespace {

using nlohmann::json;

std::string format_integer(long long v) { return std::to_string(v); }
std::string format_integer(std::uint64_t v) { return std::to_string(v); }

json json_value(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

std::vector<std::string> row_values(const ResultRow& r) {
    return {format_double(r.eta_re),      format_double(r.eta_im),
            format_double(r.g),           format_double(r.eps),
            format_double(r.delta_n_mag), format_double(r.delta_f_mag),
            format_integer(r.samples),    format_integer(r.seed),
            format_double(r.lambda1),     format_double(r.lambda2),
            format_double(r.pointer_overlap), format_double(r.p_exact),
            format_double(r.p_approx),    format_double(r.p_idp),
            format_double(r.mean_beta_a), format_double(r.mean_beta_b),
            format_double(r.std_error_a), format_double(r.std_error_b),
            r.status};
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string quoted = "\"";
    for (char c : field) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

void write_csv_line(std::ostream& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out << ',';
        out << csv_escape(fields[i]);
    }
    out << '\n';
}

void write_metadata(EmitFormat format, const EmitMetadata& meta, std::ostream& out) {
    if (format == EmitFormat::csv) {
        out << "# seed = " << meta.seed << '\n';
        out << "# rng = " << meta.rng_algorithm << '\n';
        out << "# version = " << meta.version << '\n';
        out << "# delta_f_sampling = " << meta.delta_f_sampling << '\n';
    } else {
        json preamble;
        preamble["meta"] = {{"seed", meta.seed},
                            {"rng", meta.rng_algorithm},
                            {"version", meta.version},
                            {"delta_f_sampling", meta.delta_f_sampling}};
        out << preamble.dump() << '\n';
    }
}

void check_stream(std::ostream& out, const char* what) {
    if (!out) throw std::ios_base::failure(std::string(what) + ": write failed");
}

template <typename Fn>
void emit_to_destination(const std::string& destination, Fn&& write) {
    if (destination.empty() || destination == "-") {
        write(std::cout);
        return;
    }
    std::ofstream out(destination);
    if (!out)
        throw std::ios_base::failure("cannot open output file '" + destination + "'");
    write(out);
}

} // namespace

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[64];
    auto [ptr, ec] =
        std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
    (void)ec;
    return std::string(buf, ptr);
}

double parse_double(const std::string& text) {
    if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (text == "inf") return std::numeric_limits<double>::infinity();
    if (text == "-inf") return -std::numeric_limits<double>::infinity();
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw std::invalid_argument("parse_double: malformed value '" + text + "'");
    return v;
}

void emit_rows(const std::vector<ResultRow>& rows, EmitFormat format,
               const EmitMetadata& meta, std::ostream& out) {
    write_metadata(format, meta, out);
    if (format == EmitFormat::csv) {
        write_csv_line(out, result_row_fields());
        for (const auto& row : rows) write_csv_line(out, row_values(row));
    } else {
        for (const auto& row : rows) {
            json j;
            j["eta_re"] = json_value(row.eta_re);
            j["eta_im"] = json_value(row.eta_im);
            j["g"] = json_value(row.g);
            j["eps"] = json_value(row.eps);
            j["delta_n_mag"] = json_value(row.delta_n_mag);
            j["delta_f_mag"] = json_value(row.delta_f_mag);
            j["samples"] = row.samples;
            j["seed"] = row.seed;
            j["lambda1"] = json_value(row.lambda1);
            j["lambda2"] = json_value(row.lambda2);
            j["pointer_overlap"] = json_value(row.pointer_overlap);
            j["p_exact"] = json_value(row.p_exact);
            j["p_approx"] = json_value(row.p_approx);
            j["p_idp"] = json_value(row.p_idp);
            j["mean_beta_a"] = json_value(row.mean_beta_a);
            j["mean_beta_b"] = json_value(row.mean_beta_b);
            j["std_error_a"] = json_value(row.std_error_a);
            j["std_error_b"] = json_value(row.std_error_b);
            j["status"] = row.status;
            out << j.dump() << '\n';
        }
    }
    check_stream(out, "emit_rows");
}

void emit_mc_summary(const McParams& params, const McSummary& summary,
                     EmitFormat format, const EmitMetadata& meta,
                     std::ostream& out) {
    write_metadata(format, meta, out);
    const std::vector<std::string> header{
        "eps",         "g",           "delta_f_mag", "samples",
        "seed",        "mean_beta_a", "mean_beta_b", "std_error_a",
        "std_error_b", "mean_beta_a_trace", "mean_beta_b_trace"};
    const std::vector<std::string> values{
        format_double(params.eps),
        format_double(params.g),
        format_double(params.delta_f_mag),
        format_integer(summary.sample_count),
        format_integer(summary.seed),
        format_double(summary.mean_beta_a),
        format_double(summary.mean_beta_b),
        format_double(summary.std_error_a),
        format_double(summary.std_error_b),
        format_double(summary.mean_beta_a_trace),
        format_double(summary.mean_beta_b_trace)};
    if (format == EmitFormat::csv) {
        write_csv_line(out, header);
        write_csv_line(out, values);
    } else {
        json j;
        j["eps"] = json_value(params.eps);
        j["g"] = json_value(params.g);
        j["delta_f_mag"] = json_value(params.delta_f_mag);
        j["samples"] = summary.sample_count;
        j["seed"] = summary.seed;
        j["mean_beta_a"] = json_value(summary.mean_beta_a);
        j["mean_beta_b"] = json_value(summary.mean_beta_b);
        j["std_error_a"] = json_value(summary.std_error_a);
        j["std_error_b"] = json_value(summary.std_error_b);
        j["mean_beta_a_trace"] = json_value(summary.mean_beta_a_trace);
        j["mean_beta_b_trace"] = json_value(summary.mean_beta_b_trace);
        out << j.dump() << '\n';
    }
    check_stream(out, "emit_mc_summary");
}

void emit_rows_to(const std::vector<ResultRow>& rows, EmitFormat format,
                  const EmitMetadata& meta, const std::string& destination) {
    emit_to_destination(destination,
                        [&](std::ostream& out) { emit_rows(rows, format, meta, out); });
}

void emit_mc_summary_to(const McParams& params, const McSummary& summary,
                        EmitFormat format, const EmitMetadata& meta,
                        const std::string& destination) {
    emit_to_destination(destination, [&](std::ostream& out) {
        emit_mc_summary(params, summary, format, meta, out);
    });
}

} // namespace wmdisc
