#pragma once

#include <cstdint>
#include <vector>

#include "congestcut/config.hpp"
#include "congestcut/graph.hpp"
#include "congestcut/transcript.hpp"

namespace congestcut::cert {

/// Sampling parameters for the k-connectivity certificate: p = tau ln n /
/// (eps^2 k), c color classes (c = round(1/p) clamped to >= 1), and
/// ceil((1+eps) tau ln n / eps^2) spanning forests per class.
struct CertificateParams {
  int k = 1;
  double eps = 0.5;
  double tau = 3.0;
  double ln_n = 1.0;
  double p = 1.0;
  int c = 1;
  int forests_per_class = 1;
};

CertificateParams make_params(int n, int k, double eps, double tau);
/// Same arithmetic with ln n supplied directly (synthetic sizes in tests).
CertificateParams make_params_ln(double ln_n, int k, double eps, double tau);

/// Shared coloring: drawn from the stream of the larger-id endpoint, so
/// the sequential and distributed builds see identical colors per seed.
struct EdgeColoring {
  int c = 1;
  std::uint64_t seed = 0;
  std::vector<int> color;  // per edge, in {1..c}
};

EdgeColoring color_edges(const Graph& g, int c, std::uint64_t seed);

struct Certificate {
  std::vector<int> edges;                          // kept edge indices, sorted
  std::vector<std::vector<std::vector<int>>> forests;  // [class][iteration] -> edges
};

/// Per color class, repeatedly extract edge-disjoint maximal spanning
/// forests of the residual class subgraph and keep their union.
Certificate certificate_sequential(const Graph& g, const CertificateParams& params,
                                   std::uint64_t seed);

/// Minimum spanning forest per weight function; infinite weight = absent
/// edge. Ties broken by edge id, so the forest is unique.
constexpr Weight kInfWeight = -1;  // marker: edge absent from the slot
std::vector<std::vector<int>> c_slot_mst(const Graph& g,
                                         const std::vector<std::vector<Weight>>& weights);

struct DistCertificateResult {
  Certificate certificate;
  sim::Transcript transcript;
};

/// Two-phase build: broadcast c and color edges from the larger-id
/// endpoint, then forests_per_class rounds of c-slot MST with selected
/// edges reweighted to infinity. Emits the same edge set as the
/// sequential build under the same coloring.
DistCertificateResult certificate_distributed(const Graph& g, const CertificateParams& params,
                                              std::uint64_t seed,
                                              const Config& cfg = default_config());

struct ConcentrationStats {
  double max_ratio = 0.0;      // max over (trial, cut) of sampled / (p * |C|)
  std::int64_t violations = 0; // pairs with sampled >= (1+eps) p |C|
  std::int64_t pairs = 0;
};

/// Monte-Carlo check of the sampling concentration bound over an
/// exhaustive cut family (n <= 24) or a provided one.
ConcentrationStats sampling_concentration_check(const Graph& g, int k, double eps, double tau,
                                                int trials, std::uint64_t seed);

struct CertificatePipelineResult {
  Certificate certificate;
  sim::Transcript transcript;
  Weight lambda_estimate = 0;
  bool whole_graph = false;  // estimate too large: certificate is all of E
};

/// Connectivity-aware wrapper: estimate lambda (charged oracle), then
/// either build the certificate with k = lambda' or keep the whole edge
/// set when lambda' >= n^(1-2 eps).
CertificatePipelineResult certificate_pipeline(const Graph& g, double eps_outer,
                                               std::uint64_t seed,
                                               const Config& cfg = default_config());

/// Induced subgraph on the certificate edges (weights preserved).
Graph certificate_subgraph(const Graph& g, const Certificate& cert);

}  // namespace congestcut::cert
