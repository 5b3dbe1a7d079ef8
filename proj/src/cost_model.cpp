#include "spgemm/cost_model.hpp"

#include <cmath>
#include <stdexcept>

namespace spgemm {

double model_bcast(double w, double p_hat, CostParams params, double nu, double mu) {
    if (p_hat < 1 || w < 0) throw std::invalid_argument("model_bcast: need p_hat >= 1, w >= 0");
    return nu * mu * (params.alpha * std::log2(p_hat) + params.beta * w * (p_hat - 1) / p_hat);
}

double model_a2a(double w, double p_hat, CostParams params, double nu, double mu) {
    if (p_hat < 1 || w < 0) throw std::invalid_argument("model_a2a: need p_hat >= 1, w >= 0");
    return nu * mu * (params.alpha * (p_hat - 1) + params.beta * w * (p_hat - 1) / p_hat);
}

CostBreakdown model_total_comm(double nnz_a, double nnz_b, double flops, double p, double c,
                               double b, double n, CostParams params, double nu, double mu) {
    if (p < 1 || c < 1 || b < 1 || n < 1 || p < c)
        throw std::invalid_argument("model_total_comm: invalid grid parameters");
    const double layer = std::sqrt(p / c);   // processes per row/column of a layer
    const double stages = n / (b * c);       // broadcast stages per matrix
    const double wa = (b / n) * nnz_a / layer;
    const double wb = (b / n) * nnz_b / layer;

    CostBreakdown out;
    out.a2a_input = model_a2a(nnz_b / p, c, params, nu, mu);
    out.bcast_a = stages * model_bcast(wa, layer, params, nu, mu);
    out.bcast_b = stages * model_bcast(wb, layer, params, nu, mu);
    out.a2a_output = model_a2a(flops / p, c, params, nu, mu);
    out.bcast_words = stages * (wa + wb);  // = (nnz_a + nnz_b)/sqrt(p*c)
    out.a2a_words = nnz_b / p + flops / p;
    out.bcast_alpha_coeff = 2 * stages * std::log2(layer);  // = n/(bc) * log2(p/c)
    return out;
}

}  // namespace spgemm
