#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "ncdyn/cpdyn.hpp"
#include "ncdyn/freeprod.hpp"
#include "ncdyn/offwhite.hpp"
#include "ncdyn/opalg.hpp"
#include "ncdyn/prodsys.hpp"

// JSON codecs for the file formats the CLI reads and writes. Decoders throw
// ncdyn::Error(InvalidArgument) on malformed input.
namespace ncdyn::cli {

using Json = nlohmann::ordered_json;

/// {"rows": n, "cols": m, "re": [...], "im": [...]}, row-major.
Json encode_matrix(const Matrix& m);
Matrix decode_matrix(const Json& j);

Json encode_real_matrix(const RealMatrix& m);

Json encode_matrices(const std::vector<Matrix>& ms);
std::vector<Matrix> decode_matrices(const Json& j);

/// {"re": [...], "im": [...]}
Json encode_vector(const Vector& v);
Vector decode_vector(const Json& j);

/// [re, im] or a bare real number.
Complex decode_complex(const Json& j);
Json encode_complex(Complex z);

/// {"hamiltonian": matrix, "jumps": [matrix, ...]}
Json encode_generator(const GKLSGenerator& gen);
GKLSGenerator decode_generator(const Json& j);

/// {"kraus": [matrix, ...]}
Json encode_map(const CPMap& phi);
CPMap decode_map(const Json& j);

/// [{"word": ["1", "3/2", ...], "tensors": [[matrix, ...], ...]}, ...]; word entries may
/// also be JSON integers. `dim` is used only for empty sections.
Json encode_section(const Section& f);
Section decode_section(const Json& j, Eigen::Index dim = 0);

/// {"a": [re, im], "zeta": {"re": [...], "im": [...]}}
Json encode_unit(const ExpUnit& u);
ExpUnit decode_unit(const Json& j);
std::vector<ExpUnit> decode_units(const Json& j);

/// {"labels": [...], "kernel": matrix}
Json encode_kernel(const CovKernel& k);
CovKernel decode_kernel(const Json& j);

/// {"lambda": x, "xi": {"re": [...], "im": [...]}, "u": matrix}
Json encode_gauge(const GaugeElement& g);
GaugeElement decode_gauge(const Json& j);

/// {"atoms": [...], "weights": [...]}
Json encode_measure(const DiscreteMeasure& m);
DiscreteMeasure decode_measure(const Json& j);

/// Reads and parses a JSON file. Throws CliError(FileNotFound) when missing and
/// ncdyn::Error(InvalidArgument) when the contents do not parse.
Json read_json_file(const std::filesystem::path& path);

}  // namespace ncdyn::cli
