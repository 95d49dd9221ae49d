#pragma once

#include <string>

namespace pdlab
{
//! How a reported number was obtained.
enum class Provenance
{
    closed_form,
    oracle_fd,
    monte_carlo,
    tessellation,
    fitted
};

inline char const* to_string(Provenance p)
{
    switch (p)
    {
        case Provenance::closed_form: return "closed_form";
        case Provenance::oracle_fd: return "oracle_fd";
        case Provenance::monte_carlo: return "monte_carlo";
        case Provenance::tessellation: return "tessellation";
        case Provenance::fitted: return "fitted";
    }
    return "?";
}

//! A named number with its provenance.
struct Metric
{
    std::string name;
    double value = 0;
    Provenance provenance = Provenance::closed_form;
};
}  // namespace pdlab
