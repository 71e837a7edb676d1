#pragma once

// Per-step block-sparse linear system for the unprojected update: assembly of
// (3/(2k)) I + B(m_hat) o Laplacian with B(v) = [v]_x + alpha [v]_x^2, and the
// direct (sparse LU with iterative refinement) and iterative (BiCGSTAB)
// solution paths.  The Krylov preconditioner follows the magnetization: a
// near-uniform hat_m gets the exact inverse of the frozen-coefficient
// operator in the Neumann cosine basis, a rough one a pivoted full
// factorization while the system is small and a dual-threshold incomplete LU
// beyond that.

#include <memory>
#include <stdexcept>
#include <vector>

#include "llproj/mesh.hpp"

namespace llproj {

enum class SolverMethod { direct, iterative };

struct SolverConfig {
  SolverMethod method = SolverMethod::direct;
  double tolerance = 1e-10;  // relative residual ||Ax-b||_2 / ||b||_2
  int max_iterations = 500;  // iterative path only
};

struct Block {
  double a[3][3] = {};
};

struct BlockEntry {
  long col;
  Block b;
};

// Block-sparse operator with per-cell 3x3 blocks; at most 2d+1 blocks per row
// (self plus face neighbors), entries sorted by column.  rhs is the stacked
// per-cell 3-vector in cell-major order with interleaved components, the
// same ordering for both solver paths.  The assembly parameters (k, alpha)
// and the mean and spread of hat_m are recorded so the iterative path can
// build and select its preconditioner without re-deriving them.
struct BlockSparseSystem {
  GridSpec grid;
  std::vector<std::vector<BlockEntry>> rows;
  std::vector<double> rhs;
  double k = 0.0;
  double alpha = 0.0;
  Vec3 hat_mean{0.0, 0.0, 0.0};
  double hat_spread = 0.0;  // max_I |hat_m_I - hat_mean|

  long n_cells() const { return static_cast<long>(rows.size()); }
  long n_dofs() const { return 3 * n_cells(); }
  // y = A x (for residual evaluation and the Krylov path).
  void apply(const double* x, double* y) const;
  // Lookup for tests; nullptr when absent.
  const Block* find_block(long row, long col) const;
};

struct SolveResult {
  std::vector<double> x;
  double residual = 0.0;  // relative residual, checked post-solve on both paths
  int iterations = 0;     // 0 for the direct path
};

struct SolverBreakdown : std::runtime_error {
  explicit SolverBreakdown(const std::string& what) : std::runtime_error(what) {}
};
struct SingularFactor : std::runtime_error {
  explicit SingularFactor(const std::string& what) : std::runtime_error(what) {}
};

// Assemble the moved-to-left form of the time-marching step:
//   (3/(2k)) m~ + m_hat x Lap_h m~ + alpha m_hat x (m_hat x Lap_h m~) = rhs.
// Block (I,J) = w_IJ * B(m_hat_I) for each Laplacian stencil weight w_IJ
// (Neumann-folded at the boundary), plus (3/(2k)) Identity on the diagonal.
// history_rhs must hold 3 doubles per cell.  A BDF1 step with mass coefficient
// 1/k is expressed through the same assembler via an effective step 3k/2.
BlockSparseSystem assemble(const VectorField& hat_m, const std::vector<double>& history_rhs,
                           double k, double alpha);

// Solver with sparsity-pattern reuse across repeated solves on systems of the
// same layout.  The matrix values change every step (m_hat is time-dependent)
// so the numeric factorization is never reused, only the analyzed pattern.
class LinearSolver {
 public:
  explicit LinearSolver(SolverConfig config);
  ~LinearSolver();
  LinearSolver(LinearSolver&&) noexcept;
  LinearSolver& operator=(LinearSolver&&) noexcept;

  SolveResult solve(const BlockSparseSystem& system);
  const SolverConfig& config() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// One-shot convenience wrapper.
SolveResult solve(const BlockSparseSystem& system, const SolverConfig& config);

}  // namespace llproj
