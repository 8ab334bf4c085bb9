#include <brjuno_cli/report.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>

#include <brjuno/error.hpp>

namespace brjuno::cli
{

namespace
{

std::string csv_field(const std::string &s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + '"';
}

void csv_line(std::ostream &out, const std::vector<std::string> &fields)
{
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i != 0) {
            out << ',';
        }
        out << csv_field(fields[i]);
    }
    out << '\n';
}

} // namespace

void write_csv(std::ostream &out, const table &t)
{
    csv_line(out, t.header);
    for (const auto &row : t.rows) {
        csv_line(out, row);
    }
}

void write_text(std::ostream &out, const table &t)
{
    std::vector<std::size_t> width(t.header.size(), 0);
    auto widen = [&](const std::vector<std::string> &row) {
        for (std::size_t i = 0; i < row.size() && i < width.size(); ++i) {
            width[i] = std::max(width[i], row[i].size());
        }
    };
    widen(t.header);
    for (const auto &row : t.rows) {
        widen(row);
    }
    auto line = [&](const std::vector<std::string> &row) {
        std::string s;
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i != 0) {
                s += "  ";
            }
            s += row[i];
            if (i + 1 < row.size()) {
                s.append(width[i] - row[i].size(), ' ');
            }
        }
        out << s << '\n';
    };
    line(t.header);
    for (const auto &row : t.rows) {
        line(row);
    }
    if (t.rows.empty()) {
        out << "(none)\n";
    }
}

void write_report(std::ostream &out, const report &r, output_format format)
{
    for (const auto &[k, v] : r.summary) {
        out << "# " << k << ": " << v << '\n';
    }
    for (const auto &t : r.tables) {
        out << "\n# table " << t.name << '\n';
        if (format == output_format::csv) {
            write_csv(out, t);
        } else {
            write_text(out, t);
        }
    }
}

void write_report_dir(const std::string &dir, const report &r, output_format format)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw error(error_code::invalid_argument, "cannot create output directory '" + dir + "': " + ec.message());
    }
    auto open = [&](const std::string &name) {
        std::ofstream f(std::filesystem::path(dir) / name);
        if (!f) {
            throw error(error_code::invalid_argument, "cannot write '" + name + "' in '" + dir + "'");
        }
        return f;
    };
    {
        auto f = open("summary.txt");
        for (const auto &[k, v] : r.summary) {
            f << k << ": " << v << '\n';
        }
    }
    for (const auto &t : r.tables) {
        auto f = open(t.name + (format == output_format::csv ? ".csv" : ".txt"));
        if (format == output_format::csv) {
            write_csv(f, t);
        } else {
            write_text(f, t);
        }
    }
}

} // namespace brjuno::cli
