#pragma once

#include <string>
#include <utility>

namespace stepreach {

struct GeneratedBenchmark {
  std::string model;   // JSON model document
  std::string config;  // JSON configuration document
};

enum class Variant { safe, unsafe };

// Objects moving on a grid of unit cells.  Each object has position (x, y)
// and velocity (vx, vy) with v' = A (v - v_d) where v_d depends on the cell.
struct NavSpec {
  int width = 3;
  int height = 3;
  int objects = 2;
  std::pair<int, int> init_cell{1, 0};
  std::pair<int, int> unsafe_cell{1, 2};
  Variant variant = Variant::unsafe;
  // Entering the unsafe cell becomes one shared label for all objects.
  bool sync = false;
  // 0 means objects * Manhattan distance from the initial to the unsafe cell.
  int bound = 0;
  double a11 = -1.2, a12 = 0.1, a21 = 0.1, a22 = -1.2;
};

// Throws ValidationError when a cell lies outside the grid.
GeneratedBenchmark gen_nav(const NavSpec& spec);

// A controller inserting and withdrawing n rods one at a time.  The unsafe
// configuration has the controller idle and every rod recovering.
struct RodSpec {
  int rods = 1;
  Variant variant = Variant::safe;
  double period = 1.0;  // controller wait before inserting a rod
  double hold = 1.0;    // time a rod stays inserted
  // Minimum rod rest time before insertion.  0 picks the preset: 2 for
  // safe (longer than the controller wait), 0.5 for unsafe.
  double rest = 0.0;
  // Recovery time; 0 means 2 * rods.
  double recovery = 0.0;
  // 0 means 2 * rods.
  int bound = 0;
};

GeneratedBenchmark gen_rods(const RodSpec& spec);

}  // namespace stepreach
