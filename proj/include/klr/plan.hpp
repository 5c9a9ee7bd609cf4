#pragma once

#include <optional>
#include <string>
#include <vector>

#include "klr/report.hpp"

namespace klr {

// A parsed verification plan: one subcommand plus its arguments.
struct Plan {
    std::string subcommand;
    std::string quiver_spec;    // cyclic:N | linear:N | multilinear:l=L,N=M
    std::string alpha_spec;     // "0:1,1:2"; empty = sweep the cap
    std::string field_spec;     // rational | fp:P
    std::string seq_i, seq_j;   // "0,1,2"
    std::string word_spec;      // "tau1 x2 e(0,1)"
    std::string spectrum_spec;  // cyclic:e | orbit:l,N
    std::string q_spec;         // rational like "2" or "3/2"
    std::string window_spec;    // "-6:6"
    std::string out_path;
    std::string format = "pretty";  // pretty | json | csv
    int e = 2, k = 0;
    int degree = 4;
    int alpha_cap = 4;
    int hecke_d = 3;
    int jobs = 0;  // 0 = auto
    bool flip_signed_case = false;
    bool with_surjectivity = false;
    bool dump_ops = false;

    std::string echo() const;
};

// Parses argv (without the program name).  Throws value_error with a usage
// message on malformed input.
Plan parse_args(const std::vector<std::string>& args);

// Runs the plan; the report is deterministic apart from its timing field.
VerificationReport execute(const Plan& plan);

// Serializes per plan.format and writes to stdout or plan.out_path; returns
// the process exit code (0 iff no failed records).
int emit(const Plan& plan, VerificationReport& report);

std::string usage_text();

}  // namespace klr
