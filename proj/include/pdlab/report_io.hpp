#pragma once

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "errors.hpp"

namespace pdlab::io
{
using json = nlohmann::ordered_json;

inline constexpr char kSchemaVersion[] = "1.0";
inline constexpr char kArtifactName[] = "pdlab";
inline constexpr char kArtifactVersion[] = "0.1.0";

//! Shortest decimal that round-trips; non-finite values spelled out.
inline std::string format_number(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

//! RFC 4180 field: quoted when it holds a comma, quote, CR or LF.
inline std::string csv_field(std::string const& s)
{
    if (s.find_first_of(",\"\r\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s)
    {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

inline std::string cell_text(json const& v)
{
    if (v.is_null())
        return "";
    if (v.is_string())
        return v.get<std::string>();
    if (v.is_boolean())
        return v.get<bool>() ? "true" : "false";
    if (v.is_number_integer())
        return std::to_string(v.get<long long>());
    if (v.is_number_unsigned())
        return std::to_string(v.get<unsigned long long>());
    if (v.is_number())
        return format_number(v.get<double>());
    return v.dump();
}

// JSON has no encoding for non-finite doubles
inline json number(double v)
{
    if (std::isfinite(v))
        return v;
    return format_number(v);
}

/*!
 * Rectangular result set with named columns.
 *
 * Every table carries a `provenance` column; the CSV form also carries the
 * schema version on each row so a file is self-describing.
 */
class Table
{
  public:
    explicit Table(std::vector<std::string> columns) : columns_(std::move(columns))
    {
        require(!columns_.empty() && columns_.back() == "provenance",
                "table: last column must be provenance");
    }

    void add(std::vector<json> row)
    {
        require(row.size() == columns_.size(), "table: row width mismatch");
        for (auto& c : row)
            if (c.is_number_float())
                c = number(c.get<double>());
        rows_.push_back(std::move(row));
    }

    std::vector<std::string> const& columns() const { return columns_; }
    std::size_t size() const { return rows_.size(); }
    std::vector<json> const& row(std::size_t i) const { return rows_[i]; }

    json to_json() const
    {
        json arr = json::array();
        for (auto const& r : rows_)
        {
            json obj = json::object();
            for (std::size_t i = 0; i < columns_.size(); ++i)
                obj[columns_[i]] = r[i];
            arr.push_back(std::move(obj));
        }
        return arr;
    }

    std::string to_csv() const
    {
        std::ostringstream os;
        os << "schema_version";
        for (auto const& c : columns_)
            os << ',' << csv_field(c);
        os << "\r\n";
        for (auto const& r : rows_)
        {
            os << csv_field(kSchemaVersion);
            for (auto const& c : r)
                os << ',' << csv_field(cell_text(c));
            os << "\r\n";
        }
        return os.str();
    }

  private:
    std::vector<std::string> columns_;
    std::vector<std::vector<json>> rows_;
};

//! Write text to a file, creating parent directories.
inline void write_file(std::filesystem::path const& path, std::string const& text)
{
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw DomainError("cannot open output file " + path.string());
    f << text;
    if (!f)
        throw DomainError("failed writing output file " + path.string());
}
}  // namespace pdlab::io
