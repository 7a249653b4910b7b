#include "mol/slicing/pipeline.hpp"

namespace mol::slicing {

Analyses analyze(lang::ProgramIR ir, analysis::CallGraphMode mode) {
  Analyses a;
  a.ir = std::move(ir);
  a.mode = mode;
  a.pts = analysis::points_to(a.ir, mode);
  a.cg = analysis::call_graph(a.ir, mode, &a.pts);
  for (std::size_t m = 0; m < a.ir.methods.size(); ++m) {
    const auto &method = a.ir.methods[m];
    auto cfg = analysis::build_cfg(method, static_cast<int>(m));
    a.control.push_back(analysis::control_dependences(cfg, analysis::post_dominators(cfg)));
    a.data.push_back(analysis::reaching_defs(cfg, method));
    a.cfgs.push_back(std::move(cfg));
  }
  a.fields = analysis::field_data_deps(a.ir, a.cg, a.pts);
  return a;
}

} // namespace mol::slicing
