#pragma once

// Independent reference computations used by the tests.  Nothing here calls
// the code under test for the quantity being checked.

#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "stepreach/geometry/polytope.hpp"
#include "stepreach/linalg.hpp"
#include "stepreach/model.hpp"
#include "stepreach/pathenum.hpp"
#include "stepreach/satcore.hpp"

namespace oracle {

using stepreach::Matrix;
using stepreach::Vector;

// Vertices of a bounded polytope in dimension <= 3 by solving every square
// subsystem of rows.
std::vector<Vector> vertices(const stepreach::HPolytope& p, double tol = 1e-9);

double max_over(const std::vector<Vector>& pts, const Vector& l);

// e^{At} from a long-double Taylor series with scaling and squaring.
Matrix taylor_exp(const Matrix& A, double t);

// One classical Runge-Kutta step of x' = A x + u.
Vector rk4_step(const Matrix& A, const Vector& u, const Vector& x, double h);

// All satisfying assignments (index 1..V) by truth table.
std::vector<std::vector<bool>> truth_table_models(const stepreach::sat::Cnf& cnf);

// Product size by brute force: per product location, per label.
stepreach::ProductStats literal_product_counts(const stepreach::Network& net);

// Random discrete structure: stationary flows, unit-box invariants.
struct RandomShape {
  int max_components = 4;
  int max_locations = 5;
  int max_transitions = 7;
  int shared_pool = 3;
  double shared_probability = 0.35;
};
std::string random_model_json(std::mt19937_64& rng, const RandomShape& shape);

// Safety question over a random discrete model: unsafe locations are ends of
// short random walks in each component, sets are the unit box.
stepreach::SafetySpec random_spec(std::mt19937_64& rng, const stepreach::Network& net, int bound);

// Random timer network with guards and resets that make some paths
// infeasible.  Returns {model, config}.
std::pair<std::string, std::string> random_timer_case(std::mt19937_64& rng);

struct CorpusEntry {
  std::string name;
  std::string model;
  std::string config;
};
// Deterministic test corpus (fixtures, generated benchmarks, random cases).
std::vector<CorpusEntry> corpus(const std::string& data_dir);

std::string read_file(const std::string& path);

// Canonical string form of an interleaving for set comparison.
std::string key(const stepreach::Interleaving& path);

}  // namespace oracle
