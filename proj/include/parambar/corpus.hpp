#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "parambar/matrix.hpp"

namespace parambar {

enum class ParamValue : unsigned char { Plus, Minus, Missing };

struct LanguageRecord {
    std::string name;
    std::string family;
    std::string subfamily;
    std::vector<ParamValue> params;
};

struct Dataset {
    std::vector<LanguageRecord> records;
    std::vector<std::string> param_names;

    std::size_t size() const { return records.size(); }
    std::size_t num_params() const { return param_names.size(); }
};

// CSV input, UTF-8, RFC-4180 quoting. Header row:
//   language,family,subfamily[,latitude,longitude],<param_1>,...,<param_P>
// Parameter cells: "1"/"+" = Plus, "0"/"-" = Minus, empty or "?" = Missing.
// Columns named latitude/longitude (case-insensitive) are skipped.
Dataset load_dataset(const std::filesystem::path& path);
Dataset parse_dataset_csv(std::istream& in, const std::string& source_name);

// Inverse of the loader; Missing is written as "?".
void write_dataset_csv(const Dataset& ds, std::ostream& out);
std::string dataset_to_csv(const Dataset& ds);

// Fraction of known (non-Missing) parameters.
double completeness(const LanguageRecord& rec);

// Keeps records with completeness >= threshold; errors if nothing survives.
Dataset filter_complete(const Dataset& ds, double threshold);

// Plus -> 1.0, Minus -> 0.0, Missing -> 0.5.
Matrix impute(const Dataset& ds);

struct SelectionSpec {
    std::vector<std::string> include_families;
    std::vector<std::string> include_subfamilies;
    std::vector<std::string> exclude_families;
    std::vector<std::string> exclude_subfamilies;

    bool empty() const {
        return include_families.empty() && include_subfamilies.empty() &&
               exclude_families.empty() && exclude_subfamilies.empty();
    }
};

struct SelectionResult {
    Dataset dataset;
    // One entry per tag that matched no record.
    std::vector<std::string> warnings;
};

// Tag matching is exact and case-insensitive. An empty include set means
// include all.
SelectionResult select(const Dataset& ds, const SelectionSpec& spec);

}  // namespace parambar
