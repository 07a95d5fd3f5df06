#include "snls/series.hpp"

namespace snls {

const std::vector<std::string>& series_columns() {
  static const std::vector<std::string> cols = {
      "t",  "mass", "hamiltonian", "V",   "M_mom", "K",    "G",
      "l4", "h1",   "sigma",       "w14", "linf",  "boundary_mass_fraction"};
  return cols;
}

std::vector<double> DiagnosticSeries::record_times() const {
  std::vector<double> t(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) t[i] = records[i].t;
  return t;
}

std::vector<double> DiagnosticSeries::column(const std::string& name) const {
  std::vector<double> out(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    const SeriesRecord& r = records[i];
    double v = 0.0;
    if (name == "t") v = r.t;
    else if (name == "mass") v = r.mass;
    else if (name == "hamiltonian") v = r.hamiltonian;
    else if (name == "V") v = r.V;
    else if (name == "M_mom") v = r.M_mom;
    else if (name == "K") v = r.K;
    else if (name == "G") v = r.G;
    else if (name == "l4") v = r.l4;
    else if (name == "h1") v = r.h1;
    else if (name == "sigma") v = r.sigma;
    else if (name == "w14") v = r.w14;
    else if (name == "linf") v = r.linf;
    else if (name == "boundary_mass_fraction") v = r.boundary_mass_fraction;
    else throw SnlsError("unknown series column: " + name);
    out[i] = v;
  }
  return out;
}

}  // namespace snls
