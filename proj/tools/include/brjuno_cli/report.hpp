#ifndef BRJUNO_CLI_REPORT_HPP
#define BRJUNO_CLI_REPORT_HPP

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace brjuno::cli
{

struct table {
    std::string name;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

struct report {
    // key/value lines printed before the tables (and written to summary.txt).
    std::vector<std::pair<std::string, std::string>> summary;
    std::vector<table> tables;

    void note(std::string key, std::string value)
    {
        summary.emplace_back(std::move(key), std::move(value));
    }
    table &add_table(std::string name, std::vector<std::string> header)
    {
        tables.push_back({std::move(name), std::move(header), {}});
        return tables.back();
    }
};

enum class output_format { csv, text };

void write_csv(std::ostream &out, const table &t);
void write_text(std::ostream &out, const table &t);
// Everything to one stream: summary lines as '# key: value', then each table.
void write_report(std::ostream &out, const report &r, output_format format);
// summary.txt plus one NAME.csv (or NAME.txt) per table inside dir.
void write_report_dir(const std::string &dir, const report &r, output_format format);

} // namespace brjuno::cli

#endif
