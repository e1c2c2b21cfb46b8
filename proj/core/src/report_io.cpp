#include <cstdio>
#include <ostream>
#include <string>

#include "ufofdm/analysis.hpp"

namespace ufofdm {
namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_ber_csv(std::ostream& out, const BerCurve& curve) {
  out << "snr_db,eb_n0_db,bits,errors,ber,ci_low,ci_high\n";
  for (const BerPoint& p : curve.points) {
    out << num(p.snr_db) << ',' << num(p.eb_n0_db) << ',' << p.bits << ',' << p.errors << ',' << num(p.ber) << ','
        << num(p.ci_low) << ',' << num(p.ci_high) << '\n';
  }
}

void write_ccdf_csv(std::ostream& out, const PaprCcdf& ccdf) {
  out << "threshold_db,ccdf\n";
  for (std::size_t i = 0; i < ccdf.thresholds_db.size(); ++i) {
    out << num(ccdf.thresholds_db[i]) << ',' << num(ccdf.ccdf[i]) << '\n';
  }
}

void write_psd_csv(std::ostream& out, const PsdTrace& psd) {
  out << "omega_over_pi,analytic_db,empirical_db\n";
  for (std::size_t i = 0; i < psd.omega.size(); ++i) {
    out << num(psd.omega[i] / kPi) << ',' << num(psd.analytic_db[i]) << ',';
    if (i < psd.empirical_db.size()) out << num(psd.empirical_db[i]);
    out << '\n';
  }
}

}  // namespace ufofdm
