#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace conceptq {

struct ExemplarRecord {
    std::size_t index = 0; // 1-based, contiguous within a table
    std::string name;
    double mu_a = 0.0;
    double mu_b = 0.0;
    double mu_ab = 0.0;

    double average() const { return 0.5 * (mu_a + mu_b); }

    bool operator==(const ExemplarRecord&) const = default;
};

// Free-text annotation attached to one exemplar by name (`# note.<name>: <text>`).
struct ExemplarNote {
    std::string exemplar;
    std::string text;

    bool operator==(const ExemplarNote&) const = default;
};

struct TypicalityTable {
    std::vector<ExemplarRecord> records;
    std::string label_a = "A";
    std::string label_b = "B";
    std::string combination_label = "A or B";
    std::vector<ExemplarNote> notes;

    std::size_t size() const { return records.size(); }
    const ExemplarRecord& at(std::size_t index) const; // 1-based

    bool operator==(const TypicalityTable&) const = default;
};

struct ColumnSums {
    double mu_a = 0.0;
    double mu_b = 0.0;
    double mu_ab = 0.0;
};

inline constexpr double kDefaultNormalizationTolerance = 0.02;

ColumnSums column_sums(const TypicalityTable& table);

/// Reads the `exemplar,mu_a,mu_b,mu_ab` CSV format. Lines starting with '#'
/// are comments; `# label_a:`, `# label_b:`, `# combination_label:` and
/// `# note.<exemplar>:` comments are metadata. Accepts LF or CRLF.
///
/// Throws ParseError (with the 1-based line number) on malformed rows and
/// ValidationError on duplicate exemplar names.
TypicalityTable parse_table(std::istream& in);
TypicalityTable parse_table(std::string_view text);
TypicalityTable load_table(const std::filesystem::path& path);

/// Emits the format read by parse_table, probabilities in shortest
/// round-trip form.
std::string render_csv(const TypicalityTable& table);

/// Checks each column sum against 1 and rescales columns within `tolerance`
/// so they sum to 1. Columns already within 1e-12 of 1 are left untouched,
/// which makes the operation idempotent.
///
/// Throws ValidationError for n < 2 or a column outside tolerance, and
/// DegenerateInputError for a zero in the A or B column.
TypicalityTable validate_and_normalize(TypicalityTable table,
                                       double tolerance = kDefaultNormalizationTolerance);

/// The 24-exemplar Fruits / Vegetables table shipped with the library, as raw CSV.
std::string_view fruits_vegetables_csv();
TypicalityTable fruits_vegetables();

} // namespace conceptq
