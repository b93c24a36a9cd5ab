#pragma once

#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "gqms/gqms_model.hpp"
#include "gqms/spectrum.hpp"

namespace gqms::cli {

enum ExitCode { kPass = 0, kCheckFailed = 1, kInvalidInput = 2 };

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    GaussianModel model;
    double s = 0.5;
    int max_degree = 5;
    int n_max = 40;
    std::map<std::string, double> tolerances;
    std::string csv_out;
    std::string svg_out;
};

// Names accepted as tol_<name>, with their defaults.
const std::map<std::string, double>& default_tolerances();

// Flat key = value text; '#' starts a comment.
RunConfig parse_config(std::istream& in, const std::string& source = "<config>");
RunConfig load_config(const std::string& path);
void check_ranges(const RunConfig& cfg);

// %.12g with negative zero printed as 0
std::string format_number(double x);

void write_lattice_csv(std::ostream& out, const SpectrumPrediction& p);
std::string lattice_svg(const SpectrumPrediction& p, double s);

struct CheckResult {
    std::string quantity;
    double value = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

// Runs the independent checks concurrently; results come back in a fixed order.
std::vector<CheckResult> run_verification(const RunConfig& cfg, unsigned long long seed);
void write_checks_csv(std::ostream& out, const std::vector<CheckResult>& checks);

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace gqms::cli
