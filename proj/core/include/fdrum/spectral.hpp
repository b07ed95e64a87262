#pragma once

#include <string>
#include <vector>

#include "fdrum/fem.hpp"

namespace fdrum::spectral {

// Counting function N(t) = #{lambda_j <= t} against the leading Weyl term
// A t / (4 pi), with the remainders
//   D1(t) = N(t) - A t / (4 pi),   D2(t) = D1(t) / t^beta,
// beta = (box dimension) / 2 and D2(0) = 0. The t grid holds 0, every
// eigenvalue, the midpoints between consecutive distinct eigenvalues and the
// endpoint, so N is exact everywhere (no binning).
struct CountingSeries {
    std::vector<double> t;
    std::vector<int> n;
    std::vector<double> weyl;
    std::vector<double> d1;
    std::vector<double> d2;
    double beta = 0.0;
    bool truncated = false;
};

// When t_max exceeds the largest computed eigenvalue the grid stops there
// and the series is marked truncated (N would be a lower bound beyond it).
CountingSeries counting_series(const std::vector<double>& eigenvalues,
                               double area, double dimension, double t_max);
CountingSeries counting_series(const fem::Spectrum& spec, double area,
                               double dimension, double t_max);

struct UnionPart {
    const fem::Spectrum* spectrum = nullptr;
    int multiplicity = 1;
    std::string label;
};

struct LabeledValue {
    double eigenvalue = 0.0;
    std::string source;
};

// Multiset union of the part spectra, each repeated `multiplicity` times,
// sorted ascending. Ties keep part order, so exact duplicates from a
// multiplicity > 1 part sit next to each other.
std::vector<LabeledValue> union_spectrum(const std::vector<UnionPart>& parts);

}  // namespace fdrum::spectral
