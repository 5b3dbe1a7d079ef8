#pragma once

namespace spgemm {

/// alpha: latency per message; beta: inverse bandwidth per matrix element.
/// Both in multiples of a scalar flop time.
struct CostParams {
    double alpha = 0;
    double beta = 0;
};

/// T_bcast(w, p_hat) = alpha*log2(p_hat) + beta*w*(p_hat-1)/p_hat.
/// nu (simultaneous collectives) and mu (processes per node) are plain
/// multipliers with no contention law behind them.
double model_bcast(double w, double p_hat, CostParams params, double nu = 1, double mu = 1);

/// T_a2a(w, p_hat) = alpha*(p_hat-1) + beta*w*(p_hat-1)/p_hat.
double model_a2a(double w, double p_hat, CostParams params, double nu = 1, double mu = 1);

/// The four communication terms of Split-3D-SpGEMM on a
/// sqrt(p/c) x sqrt(p/c) x c grid with blocking parameter b and inner
/// dimension n: the input all-to-all of B, n/(bc) broadcast stages each for
/// A and B, and the output all-to-all of the intermediate C.
struct CostBreakdown {
    double a2a_input = 0;
    double bcast_a = 0;
    double bcast_b = 0;
    double a2a_output = 0;

    // Data volumes (matrix elements per process) behind the beta terms, and
    // the summed alpha coefficient of the broadcast stages.
    double bcast_words = 0;
    double a2a_words = 0;
    double bcast_alpha_coeff = 0;

    double total() const { return a2a_input + bcast_a + bcast_b + a2a_output; }
};

CostBreakdown model_total_comm(double nnz_a, double nnz_b, double flops, double p, double c,
                               double b, double n, CostParams params, double nu = 1,
                               double mu = 1);

}  // namespace spgemm
