#include "conceptq/dataset.hpp"

#include "conceptq/error.hpp"
#include "conceptq/numfmt.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

namespace conceptq {

namespace {

constexpr std::string_view kHeader = "exemplar,mu_a,mu_b,mu_ab";
constexpr double kUnitSumSlack = 1e-12;

// Splits one CSV line. Double-quoted fields may contain commas; "" is an escaped quote.
std::vector<std::string> split_fields(std::string_view line, std::size_t line_no) {
    std::vector<std::string> fields;
    std::string current;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    current.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                current.push_back(ch);
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            fields.push_back(std::move(current));
            current.clear();
        } else {
            current.push_back(ch);
        }
    }
    if (quoted) throw ParseError(line_no, "unterminated quoted field");
    fields.push_back(std::move(current));
    return fields;
}

std::string quote_if_needed(const std::string& name) {
    if (name.find_first_of(",\"") == std::string::npos && trim(name) == name) return name;
    std::string out = "\"";
    for (char ch : name) {
        if (ch == '"') out.push_back('"');
        out.push_back(ch);
    }
    out.push_back('"');
    return out;
}

double parse_probability(std::string_view field, std::string_view column, std::size_t line_no) {
    const auto value = parse_double(field);
    if (!value) {
        throw ParseError(line_no, "non-numeric " + std::string(column) + " value '" +
                                      std::string(trim(field)) + "'");
    }
    if (*value < 0.0 || *value > 1.0) {
        throw ParseError(line_no, std::string(column) + " value " + format_double(*value) +
                                      " outside [0, 1]");
    }
    return *value;
}

// Handles `# key: value` metadata; anything else after '#' is an ordinary comment.
void apply_metadata(std::string_view comment, TypicalityTable& table) {
    comment = trim(comment.substr(1));
    const auto colon = comment.find(':');
    if (colon == std::string_view::npos) return;
    const auto key = trim(comment.substr(0, colon));
    const auto value = std::string(trim(comment.substr(colon + 1)));
    if (key == "label_a") {
        table.label_a = value;
    } else if (key == "label_b") {
        table.label_b = value;
    } else if (key == "combination_label") {
        table.combination_label = value;
    } else if (key.starts_with("note.") && key.size() > 5) {
        table.notes.push_back({std::string(key.substr(5)), value});
    }
}

} // namespace

const ExemplarRecord& TypicalityTable::at(std::size_t index) const {
    if (index == 0 || index > records.size()) {
        throw IndexError("exemplar index " + std::to_string(index) + " outside 1.." +
                         std::to_string(records.size()));
    }
    return records[index - 1];
}

// Ascending-order summation: the result does not depend on row order.
ColumnSums column_sums(const TypicalityTable& table) {
    const auto sum = [&](double ExemplarRecord::*column) {
        std::vector<double> values;
        values.reserve(table.size());
        for (const auto& r : table.records) values.push_back(r.*column);
        std::sort(values.begin(), values.end());
        double total = 0.0;
        for (double v : values) total += v;
        return total;
    };
    return {sum(&ExemplarRecord::mu_a), sum(&ExemplarRecord::mu_b), sum(&ExemplarRecord::mu_ab)};
}

TypicalityTable parse_table(std::istream& in) {
    TypicalityTable table;
    std::set<std::string> seen;
    std::string raw;
    std::size_t line_no = 0;
    bool have_header = false;

    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.remove_prefix(3);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        const auto content = trim(line);
        if (content.empty()) continue;
        if (content.front() == '#') {
            apply_metadata(content, table);
            continue;
        }
        if (!have_header) {
            std::string header;
            for (char ch : content) {
                if (ch != ' ' && ch != '\t') header.push_back(ch);
            }
            if (header != kHeader) {
                throw ParseError(line_no, "expected header '" + std::string(kHeader) + "'");
            }
            have_header = true;
            continue;
        }

        const auto fields = split_fields(line, line_no);
        if (fields.size() != 4) {
            throw ParseError(line_no, "expected 4 fields, found " + std::to_string(fields.size()));
        }
        ExemplarRecord record;
        record.index = table.records.size() + 1;
        record.name = std::string(trim(fields[0]));
        if (record.name.empty()) throw ParseError(line_no, "empty exemplar name");
        record.mu_a = parse_probability(fields[1], "mu_a", line_no);
        record.mu_b = parse_probability(fields[2], "mu_b", line_no);
        record.mu_ab = parse_probability(fields[3], "mu_ab", line_no);
        if (!seen.insert(record.name).second) {
            throw ValidationError("line " + std::to_string(line_no) + ": duplicate exemplar '" +
                                  record.name + "'");
        }
        table.records.push_back(std::move(record));
    }
    if (!have_header) throw ParseError(line_no, "missing header '" + std::string(kHeader) + "'");
    return table;
}

TypicalityTable parse_table(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_table(in);
}

TypicalityTable load_table(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    return parse_table(in);
}

std::string render_csv(const TypicalityTable& table) {
    std::string out;
    out += "# label_a: " + table.label_a + "\n";
    out += "# label_b: " + table.label_b + "\n";
    out += "# combination_label: " + table.combination_label + "\n";
    for (const auto& note : table.notes) {
        out += "# note." + note.exemplar + ": " + note.text + "\n";
    }
    out += kHeader;
    out += '\n';
    for (const auto& r : table.records) {
        out += quote_if_needed(r.name);
        for (double v : {r.mu_a, r.mu_b, r.mu_ab}) {
            out += ',';
            out += format_double(v);
        }
        out += '\n';
    }
    return out;
}

TypicalityTable validate_and_normalize(TypicalityTable table, double tolerance) {
    if (!(tolerance > 0.0)) throw ValidationError("normalization tolerance must be positive");
    if (table.size() < 2) {
        throw ValidationError("need at least 2 exemplars, found " + std::to_string(table.size()));
    }
    for (std::size_t i = 0; i < table.size(); ++i) {
        const auto& r = table.records[i];
        if (r.index != i + 1) throw ValidationError("exemplar indices must be contiguous from 1");
        for (double v : {r.mu_a, r.mu_b, r.mu_ab}) {
            if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
                throw ValidationError("exemplar '" + r.name + "' has a probability outside [0, 1]");
            }
        }
        if (r.mu_a == 0.0 || r.mu_b == 0.0) {
            throw DegenerateInputError("exemplar '" + r.name + "' (" + std::to_string(r.index) +
                                       ") has zero probability for " +
                                       (r.mu_a == 0.0 ? table.label_a : table.label_b) +
                                       "; its phase is undefined");
        }
    }

    const auto sums = column_sums(table);
    const auto rescale = [&](double sum, double ExemplarRecord::*column, std::string_view name) {
        if (std::abs(sum - 1.0) > tolerance) {
            throw ValidationError("column " + std::string(name) + " sums to " + format_double(sum) +
                                  ", outside 1 +/- " + format_double(tolerance));
        }
        if (std::abs(sum - 1.0) <= kUnitSumSlack) return;
        for (auto& r : table.records) r.*column /= sum;
    };
    rescale(sums.mu_a, &ExemplarRecord::mu_a, "mu_a");
    rescale(sums.mu_b, &ExemplarRecord::mu_b, "mu_b");
    rescale(sums.mu_ab, &ExemplarRecord::mu_ab, "mu_ab");
    return table;
}

TypicalityTable fruits_vegetables() { return parse_table(fruits_vegetables_csv()); }

} // namespace conceptq
