#include "parambar/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace parambar {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

// RFC-4180 style reader: quoted fields may contain commas, newlines and
// doubled quotes. Returns rows of cells; skips a trailing empty line.
std::vector<std::vector<std::string>> read_csv(std::istream& in, const std::string& source) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string cell;
    bool in_quotes = false;
    bool cell_started = false;
    bool row_started = false;
    std::size_t line = 1;

    auto end_cell = [&] {
        row.push_back(std::move(cell));
        cell.clear();
        cell_started = false;
    };
    auto end_row = [&] {
        end_cell();
        rows.push_back(std::move(row));
        row.clear();
        row_started = false;
    };

    char c;
    while (in.get(c)) {
        if (in_quotes) {
            if (c == '"') {
                if (in.peek() == '"') {
                    in.get(c);
                    cell.push_back('"');
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n') ++line;
                cell.push_back(c);
            }
            continue;
        }
        switch (c) {
        case '"':
            if (cell_started && !cell.empty())
                throw std::runtime_error(source + ":" + std::to_string(line) +
                                         ": quote inside unquoted cell");
            in_quotes = true;
            cell_started = true;
            row_started = true;
            break;
        case ',':
            end_cell();
            row_started = true;
            break;
        case '\r':
            break;
        case '\n':
            if (row_started || cell_started || !row.empty()) end_row();
            ++line;
            break;
        default:
            cell.push_back(c);
            cell_started = true;
            row_started = true;
            break;
        }
    }
    if (in_quotes)
        throw std::runtime_error(source + ": unterminated quoted cell");
    if (row_started || !row.empty()) end_row();
    return rows;
}

ParamValue parse_cell(const std::string& cell, const std::string& source, std::size_t row,
                      const std::string& col_name) {
    if (cell == "1" || cell == "+") return ParamValue::Plus;
    if (cell == "0" || cell == "-") return ParamValue::Minus;
    if (cell.empty() || cell == "?") return ParamValue::Missing;
    throw std::runtime_error(source + ": row " + std::to_string(row) + ", column '" + col_name +
                             "': unrecognized cell value '" + cell + "'");
}

bool needs_quoting(const std::string& s) {
    return s.find_first_of(",\"\n\r") != std::string::npos;
}

void write_cell(std::ostream& out, const std::string& s) {
    if (!needs_quoting(s)) {
        out << s;
        return;
    }
    out << '"';
    for (char c : s) {
        if (c == '"') out << '"';
        out << c;
    }
    out << '"';
}

}  // namespace

Dataset parse_dataset_csv(std::istream& in, const std::string& source) {
    const auto rows = read_csv(in, source);
    if (rows.empty()) throw std::runtime_error(source + ": empty file");

    const auto& header = rows.front();
    if (header.size() < 3 || lower(header[0]) != "language" || lower(header[1]) != "family" ||
        lower(header[2]) != "subfamily")
        throw std::runtime_error(source + ": header must start with language,family,subfamily");

    // Map header columns to parameter slots; latitude/longitude are reserved
    // non-parameter columns.
    Dataset ds;
    std::vector<std::size_t> param_cols;
    for (std::size_t c = 3; c < header.size(); ++c) {
        const std::string name = lower(header[c]);
        if (name == "latitude" || name == "longitude") continue;
        param_cols.push_back(c);
        ds.param_names.push_back(header[c]);
    }

    std::unordered_set<std::string> seen_names;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& cells = rows[r];
        if (cells.size() != header.size())
            throw std::runtime_error(source + ": row " + std::to_string(r + 1) + " has " +
                                     std::to_string(cells.size()) + " cells, expected " +
                                     std::to_string(header.size()));
        LanguageRecord rec;
        rec.name = cells[0];
        rec.family = cells[1];
        rec.subfamily = cells[2];
        if (rec.name.empty())
            throw std::runtime_error(source + ": row " + std::to_string(r + 1) +
                                     ": empty language name");
        if (!seen_names.insert(lower(rec.name)).second)
            throw std::runtime_error(source + ": duplicate language name '" + rec.name +
                                     "' (row " + std::to_string(r + 1) + ")");
        rec.params.reserve(param_cols.size());
        for (std::size_t k = 0; k < param_cols.size(); ++k)
            rec.params.push_back(
                parse_cell(cells[param_cols[k]], source, r + 1, ds.param_names[k]));
        ds.records.push_back(std::move(rec));
    }
    return ds;
}

Dataset load_dataset(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open input file: " + path.string());
    return parse_dataset_csv(in, path.string());
}

void write_dataset_csv(const Dataset& ds, std::ostream& out) {
    out << "language,family,subfamily";
    for (const auto& p : ds.param_names) {
        out << ',';
        write_cell(out, p);
    }
    out << '\n';
    for (const auto& rec : ds.records) {
        write_cell(out, rec.name);
        out << ',';
        write_cell(out, rec.family);
        out << ',';
        write_cell(out, rec.subfamily);
        for (ParamValue v : rec.params) {
            out << ',';
            switch (v) {
            case ParamValue::Plus: out << '1'; break;
            case ParamValue::Minus: out << '0'; break;
            case ParamValue::Missing: out << '?'; break;
            }
        }
        out << '\n';
    }
}

std::string dataset_to_csv(const Dataset& ds) {
    std::ostringstream out;
    write_dataset_csv(ds, out);
    return out.str();
}

double completeness(const LanguageRecord& rec) {
    if (rec.params.empty()) throw std::invalid_argument("completeness: record has no parameters");
    std::size_t known = 0;
    for (ParamValue v : rec.params)
        if (v != ParamValue::Missing) ++known;
    return static_cast<double>(known) / static_cast<double>(rec.params.size());
}

Dataset filter_complete(const Dataset& ds, double threshold) {
    if (threshold < 0.0 || threshold > 1.0)
        throw std::invalid_argument("completeness threshold must be in [0,1]");
    Dataset out;
    out.param_names = ds.param_names;
    for (const auto& rec : ds.records)
        if (completeness(rec) >= threshold) out.records.push_back(rec);
    if (out.records.empty()) throw std::runtime_error("no languages survive threshold");
    return out;
}

Matrix impute(const Dataset& ds) {
    Matrix m(ds.records.size(), ds.num_params());
    for (std::size_t r = 0; r < ds.records.size(); ++r) {
        const auto& params = ds.records[r].params;
        for (std::size_t c = 0; c < params.size(); ++c) {
            switch (params[c]) {
            case ParamValue::Plus: m.at(r, c) = 1.0; break;
            case ParamValue::Minus: m.at(r, c) = 0.0; break;
            case ParamValue::Missing: m.at(r, c) = 0.5; break;
            }
        }
    }
    return m;
}

SelectionResult select(const Dataset& ds, const SelectionSpec& spec) {
    auto fold = [](const std::vector<std::string>& tags) {
        std::vector<std::string> out;
        out.reserve(tags.size());
        for (const auto& t : tags) out.push_back(lower(t));
        return out;
    };
    const auto inc_f = fold(spec.include_families);
    const auto inc_s = fold(spec.include_subfamilies);
    const auto exc_f = fold(spec.exclude_families);
    const auto exc_s = fold(spec.exclude_subfamilies);

    auto contains = [](const std::vector<std::string>& set, const std::string& tag) {
        return std::find(set.begin(), set.end(), tag) != set.end();
    };

    std::vector<bool> matched_inc_f(inc_f.size(), false), matched_inc_s(inc_s.size(), false);
    std::vector<bool> matched_exc_f(exc_f.size(), false), matched_exc_s(exc_s.size(), false);
    auto mark = [](const std::vector<std::string>& set, const std::string& tag,
                   std::vector<bool>& hits) {
        for (std::size_t i = 0; i < set.size(); ++i)
            if (set[i] == tag) hits[i] = true;
    };

    SelectionResult result;
    result.dataset.param_names = ds.param_names;
    for (const auto& rec : ds.records) {
        const std::string fam = lower(rec.family);
        const std::string sub = lower(rec.subfamily);
        mark(inc_f, fam, matched_inc_f);
        mark(inc_s, sub, matched_inc_s);
        mark(exc_f, fam, matched_exc_f);
        mark(exc_s, sub, matched_exc_s);
        const bool keep = (inc_f.empty() || contains(inc_f, fam)) &&
                          (inc_s.empty() || contains(inc_s, sub)) && !contains(exc_f, fam) &&
                          !contains(exc_s, sub);
        if (keep) result.dataset.records.push_back(rec);
    }

    auto warn_unmatched = [&](const std::vector<std::string>& orig, const std::vector<bool>& hits,
                              const char* what) {
        for (std::size_t i = 0; i < orig.size(); ++i)
            if (!hits[i])
                result.warnings.push_back(std::string(what) + " tag '" + orig[i] +
                                          "' matched no records");
    };
    warn_unmatched(spec.include_families, matched_inc_f, "include-family");
    warn_unmatched(spec.include_subfamilies, matched_inc_s, "include-subfamily");
    warn_unmatched(spec.exclude_families, matched_exc_f, "exclude-family");
    warn_unmatched(spec.exclude_subfamilies, matched_exc_s, "exclude-subfamily");
    return result;
}

}  // namespace parambar
