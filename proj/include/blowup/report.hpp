#pragma once

#include <string>

#include "json.hpp"

#include "blowup/config.hpp"
#include "blowup/params.hpp"
#include "blowup/profile.hpp"
#include "blowup/solver.hpp"
#include "blowup/study.hpp"

namespace blowup {

using nlohmann::json;

/// x rounded to 12 significant digits (non-finite values pass through).
double sig12(double x);
/// 12 significant digits, "inf"/"-inf"/"nan" for non-finite values.
std::string fmt12(double x);

/// Numbers go through sig12; non-finite values become strings.
json num(double x);

json to_json(const PhysParams& p);
json to_json(const Grid& g);
json to_json(const AdmissibilityReport& r);
json to_json(const ExponentTable& t);
json to_json(const NormReport& r);
json to_json(const RateFit& f);
json to_json(const ScalingFit& f);
json to_json(const SpacetimeBound& b);
json to_json(const SelfConvergence& c);
json to_json(const CauchyDiagnostic& c);
json to_json(const StudyReport& r);

/// Pretty JSON with a trailing newline.
std::string dump(const json& j);

/// Per-n CSV of a study run: t,tau,eps_l2,eps_h1_dot,eps_h1,eps_weighted_l2,
/// u_l2,u_h1_dot,charge_residual,gradient_monotone.
std::string epsilon_csv(const EpsilonTrajectory& traj);

/// Rebuilds the norm series (no snapshots, no solution fields) from
/// epsilon_csv output.
EpsilonTrajectory read_epsilon_csv(const std::string& path, int n, double delta);

/// Column documentation for every CSV the CLI writes.
json csv_schema();

json manifest(const RunConfig& cfg, const std::string& status);

/// Drift of the conserved quantities (real λ) or the dissipation diagnostics
/// (Im λ > 0) of one evolve run.
json conservation_report(const TrajectoryRecord& traj, const Field& initial);

}  // namespace blowup
