#pragma once

#include "dcsym/contact_jets.hpp"

namespace dcsym {

/// Contact map of (t, x, u, ut, ux); components t-hat, x-hat, u-hat, ut-hat, ux-hat.
using PdeContactMap = ContactMap;

struct PdeJetPoint {
  double t = 0, x = 0, u = 0, ut = 0, ux = 1, utt = 0, utx = 0, uxx = 0;
};

/// u_tt = rhs(t, x, u, ut, ux, utx, uxx).
struct PdeSpec {
  Expression rhs;
  static PdeSpec parse(const std::string& rhs);
  static std::vector<std::string> rhs_variables();
};

struct PdeProlongation {
  double t = 0, x = 0, u = 0, ut = 0, ux = 0;  // hatted first-order jet
  double utt = 0, utx = 0, uxx = 0;            // hatted second derivatives
  double mixed_mismatch = 0;                   // |u_tx from the ut row - u_xt from the ux row|
};

PdeProlongation pde_prolong(const PdeContactMap& map, const PdeJetPoint& jp, const EvalContext& ctx = {});

/// Default sampling box: t, x, u, ut in [-2, 2], ux in [0.1, 2], second derivatives in [-2, 2].
SampleDomain pde_domain();

VerificationReport pde_contact_residual(const PdeContactMap& map, const SampleOptions& options = {});
VerificationReport pde_symmetry_residual(const PdeSpec& pde, const PdeContactMap& map, const SampleOptions& options = {});
VerificationReport pde_determining_residual(const std::vector<GeneratorSpec>& generators, const RealMatrix& b,
                                            const PdeContactMap& map, const SampleOptions& options = {});

}  // namespace dcsym
