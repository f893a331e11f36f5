#include "plsstop/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "plsstop/errors.hpp"

namespace plsstop {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

double parse_double(const std::string& field, int line_no) {
    double v = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{} || res.ptr != last)
        throw ParseError("cannot parse number '" + field + "'", line_no);
    return v;
}

// Quote a CSV field only when it needs it (commas / quotes / newlines).
std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += "\"\"";
        else out.push_back(ch);
    }
    out += "\"";
    return out;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path, std::ios::binary);  // binary: no CRLF translation
    if (!f) throw Error("cannot open '" + path + "' for writing");
    return f;
}

std::string fmt_int_or_empty(int v) {
    return v < 0 ? std::string{} : std::to_string(v);
}

}  // namespace

std::string format_double(double v) {
    if (std::isnan(v)) return {};
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

Dataset read_dataset_csv(const std::string& path, const std::string& response,
                         Family family) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ParseError("cannot open '" + path + "'");

    std::string line;
    if (!std::getline(f, line)) throw ParseError("empty file", 1);
    const auto header = split_csv_line(line);
    if (header.size() < 2)
        throw ParseError("need at least one predictor and the response", 1);

    int y_col = -1;
    std::vector<std::string> names;
    for (std::size_t j = 0; j < header.size(); ++j) {
        if (header[j] == response) {
            if (y_col >= 0)
                throw ParseError("duplicate response column '" + response + "'", 1);
            y_col = static_cast<int>(j);
        } else {
            names.push_back(header[j]);
        }
    }
    if (y_col < 0)
        throw ParseError("response column '" + response + "' not found", 1);

    std::vector<std::vector<double>> x_rows;
    std::vector<double> y_vals;
    int line_no = 1;
    while (std::getline(f, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != header.size())
            throw ParseError("expected " + std::to_string(header.size()) +
                                 " fields, got " + std::to_string(fields.size()),
                             line_no);
        std::vector<double> row;
        row.reserve(fields.size() - 1);
        for (std::size_t j = 0; j < fields.size(); ++j) {
            const double v = parse_double(fields[j], line_no);
            if (static_cast<int>(j) == y_col)
                y_vals.push_back(v);
            else
                row.push_back(v);
        }
        x_rows.push_back(std::move(row));
    }
    if (x_rows.size() < 2) throw ParseError("need at least 2 data rows");

    Dataset data;
    data.family = family;
    data.column_names = names;
    data.X.resize(static_cast<Eigen::Index>(x_rows.size()),
                  static_cast<Eigen::Index>(names.size()));
    data.y.resize(static_cast<Eigen::Index>(y_vals.size()));
    for (std::size_t i = 0; i < x_rows.size(); ++i) {
        for (std::size_t j = 0; j < names.size(); ++j)
            data.X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                x_rows[i][j];
        data.y[static_cast<Eigen::Index>(i)] = y_vals[i];
    }
    try {
        data.validate();
    } catch (const Error& e) {
        // Content problems in a file are data errors, not usage errors.
        throw ParseError(e.what());
    }
    return data;
}

void write_dataset_csv(const std::string& path, const Dataset& data) {
    auto f = open_out(path);
    for (Eigen::Index j = 0; j < data.p(); ++j) {
        const std::string name =
            data.column_names.empty() ? "x" + std::to_string(j + 1)
                                      : data.column_names[static_cast<std::size_t>(j)];
        f << csv_escape(name) << ',';
    }
    f << "y\n";
    for (Eigen::Index i = 0; i < data.n(); ++i) {
        for (Eigen::Index j = 0; j < data.p(); ++j)
            f << format_double(data.X(i, j)) << ',';
        f << format_double(data.y[i]) << '\n';
    }
}

void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m,
                      const std::vector<std::string>& col_names) {
    if (static_cast<Eigen::Index>(col_names.size()) != m.cols())
        throw InvalidArgs("write_matrix_csv: header size mismatch");
    auto f = open_out(path);
    for (std::size_t j = 0; j < col_names.size(); ++j)
        f << csv_escape(col_names[j]) << (j + 1 < col_names.size() ? "," : "\n");
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            f << format_double(m(i, j)) << (j + 1 < m.cols() ? "," : "\n");
}

void write_trace_csv(const std::string& path, const CriterionResult& result) {
    auto f = open_out(path);
    f << "k,statistic,decision,q2,press,rss,dof,sigma2_hat,aic,bic,"
         "missclassed,min_wald_p,ci_lower,ci_upper,x_excluding\n";
    for (const auto& row : result.trace) {
        f << row.k << ',' << format_double(row.statistic) << ','
          << (row.decision ? 1 : 0) << ',' << format_double(row.q2) << ','
          << format_double(row.press) << ',' << format_double(row.rss) << ','
          << format_double(row.dof) << ',' << format_double(row.sigma2_hat)
          << ',' << format_double(row.aic) << ',' << format_double(row.bic)
          << ',' << fmt_int_or_empty(row.missclassed) << ','
          << format_double(row.min_wald_p) << ','
          << format_double(row.ci_lower) << ','
          << format_double(row.ci_upper) << ','
          << fmt_int_or_empty(row.x_excluding) << '\n';
    }
}

void write_grid_csv(const std::string& path, const std::vector<GridRow>& rows) {
    auto f = open_out(path);
    f << "sigma4,sigma5,replicate,p,criterion,K,nmse_train,nmse_test,"
         "missclassed_test,runtime_ms,error\n";
    for (const auto& row : rows) {
        f << format_double(row.sigma4) << ',' << format_double(row.sigma5)
          << ',' << row.replicate << ',' << fmt_int_or_empty(row.p_drawn)
          << ',' << criterion_name(row.criterion) << ','
          << fmt_int_or_empty(row.K) << ',' << format_double(row.nmse_train)
          << ',' << format_double(row.nmse_test) << ','
          << fmt_int_or_empty(row.missclassed_test) << ','
          << format_double(row.runtime_ms) << ',' << csv_escape(row.error)
          << '\n';
    }
}

void write_summary_csv(const std::string& path, const GridSummary& summary) {
    auto f = open_out(path);
    f << "record,sigma4,sigma5,criterion_a,criterion_b,metric,n_ok,"
         "value_a,value_b,t_stat,df,p_value,verdict\n";
    for (const auto& s : summary.stats) {
        f << "stat," << format_double(s.sigma4) << ','
          << format_double(s.sigma5) << ',' << criterion_name(s.criterion)
          << ",," << s.metric << ',' << s.n_ok << ','
          << format_double(s.mean) << ',' << format_double(s.variance)
          << ",,,,\n";
    }
    for (const auto& t : summary.tests) {
        f << "ttest," << format_double(t.sigma4) << ','
          << format_double(t.sigma5) << ',' << criterion_name(t.criterion_a)
          << ',' << criterion_name(t.criterion_b) << ',' << t.metric << ",,"
          << format_double(t.mean_a) << ',' << format_double(t.mean_b) << ','
          << format_double(t.t) << ',' << format_double(t.df) << ','
          << format_double(t.p) << ',' << t.verdict << '\n';
    }
}

void write_histogram_csv(const std::string& path, const KHistogram& hist) {
    auto f = open_out(path);
    f << "k,count\n";
    // A row with k = -1 carries the resamples where the criterion failed.
    if (hist.errors > 0) f << "-1," << hist.errors << '\n';
    for (const auto& [k, cnt] : hist.counts) f << k << ',' << cnt << '\n';
}

void write_kv_file(const std::string& path,
                   const std::vector<std::pair<std::string, std::string>>& kv) {
    auto f = open_out(path);
    for (const auto& [key, value] : kv) f << key << '=' << value << '\n';
}

}  // namespace plsstop
