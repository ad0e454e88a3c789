#include "spdc/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "spdc/errors.hpp"

namespace spdc::io {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

std::string csv_header(const std::string& columns) {
  std::ostringstream os;
  os << "# schema_version=" << kSchemaVersion << "\n" << columns << "\n";
  return os.str();
}

}  // namespace

void write_text(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) {
      throw config_error("cannot open for writing: " + tmp);
    }
    f << content;
    if (!f) {
      throw config_error("write failed: " + tmp);
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    throw config_error("cannot rename " + tmp + " to " + path);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) {
    throw config_error("cannot open: " + path);
  }
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

void write_spectrum_csv(const std::string& path, const SpectralAmplitude& T) {
  std::ostringstream os;
  os << csv_header("nu_rad_per_fs,re,im,abs");
  for (std::size_t k = 0; k < T.grid.size(); ++k) {
    os << fmt(T.grid.nu[k]) << ',' << fmt(T.values[k].real()) << ','
       << fmt(T.values[k].imag()) << ',' << fmt(std::abs(T.values[k])) << "\n";
  }
  write_text(path, os.str());
}

void write_trace_csv(const std::string& path, const CorrelationTrace& tr) {
  std::ostringstream os;
  os << csv_header("tau_fs,value");
  for (std::size_t j = 0; j < tr.tau_fs.size(); ++j) {
    os << fmt(tr.tau_fs[j]) << ',' << fmt(tr.values[j]) << "\n";
  }
  write_text(path, os.str());
}

void write_pattern_csv(const std::string& path, const InterferencePattern& p) {
  std::ostringstream os;
  os << csv_header("tau_fs,rate,envelope");
  for (std::size_t j = 0; j < p.tau_fs.size(); ++j) {
    os << fmt(p.tau_fs[j]) << ',' << fmt(p.rate[j]) << ','
       << fmt(p.envelope[j]) << "\n";
  }
  write_text(path, os.str());
}

void write_tuning_csv(const std::string& path, const TuningCurve& sig,
                      const TuningCurve& idl) {
  std::ostringstream os;
  os << csv_header("lambda_nm,theta_ext_deg,branch");
  for (std::size_t j = 0; j < sig.lambda_nm.size(); ++j) {
    os << fmt(sig.lambda_nm[j]) << ',' << fmt(sig.theta_ext_deg[j])
       << ",signal\n";
  }
  for (std::size_t j = 0; j < idl.lambda_nm.size(); ++j) {
    os << fmt(idl.lambda_nm[j]) << ',' << fmt(idl.theta_ext_deg[j])
       << ",idler\n";
  }
  write_text(path, os.str());
}

void write_pair_window_csv(const std::string& path, const PairWindow& pw) {
  std::ostringstream os;
  os << csv_header("nu_rad_per_fs,weight");
  for (std::size_t k = 0; k < pw.nu.size(); ++k) {
    os << fmt(pw.nu[k]) << ',' << fmt(pw.weight[k]) << "\n";
  }
  write_text(path, os.str());
}

void write_histogram_csv(const std::string& path, const MCAHistogram& h) {
  std::ostringstream os;
  os << csv_header("bin_start_ns,bin_end_ns,counts");
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    const double a = static_cast<double>(i) * h.bin_width_ns;
    os << fmt(a) << ',' << fmt(a + h.bin_width_ns) << ',' << h.counts[i]
       << "\n";
  }
  write_text(path, os.str());
}

void write_svg(const std::string& path, const std::vector<double>& x,
               const std::vector<double>& y, const std::string& title,
               const std::string& x_label, const std::string& y_label) {
  if (x.size() != y.size() || x.size() < 2) {
    throw config_error("svg plot needs matching x/y arrays with >= 2 points");
  }
  const double w = 900.0, hgt = 540.0, ml = 70.0, mr = 20.0, mt = 40.0,
               mb = 50.0;
  const auto [xmin_it, xmax_it] = std::minmax_element(x.begin(), x.end());
  const auto [ymin_it, ymax_it] = std::minmax_element(y.begin(), y.end());
  double xmin = *xmin_it, xmax = *xmax_it, ymin = *ymin_it, ymax = *ymax_it;
  if (xmax - xmin <= 0.0) xmax = xmin + 1.0;
  if (ymax - ymin <= 0.0) ymax = ymin + 1.0;
  auto px = [&](double v) {
    return ml + (v - xmin) / (xmax - xmin) * (w - ml - mr);
  };
  auto py = [&](double v) {
    return hgt - mb - (v - ymin) / (ymax - ymin) * (hgt - mt - mb);
  };
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
     << "\" height=\"" << hgt << "\" viewBox=\"0 0 " << w << ' ' << hgt
     << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << w / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        "font-family=\"sans-serif\" font-size=\"16\">"
     << title << "</text>\n"
     << "<text x=\"" << w / 2 << "\" y=\"" << hgt - 12
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        "font-size=\"13\">"
     << x_label << "</text>\n"
     << "<text x=\"18\" y=\"" << hgt / 2
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\""
        " transform=\"rotate(-90 18 "
     << hgt / 2 << ")\">" << y_label << "</text>\n"
     << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << w - ml - mr
     << "\" height=\"" << hgt - mt - mb
     << "\" fill=\"none\" stroke=\"#888\"/>\n"
     << "<text x=\"" << ml << "\" y=\"" << hgt - mb + 18
     << "\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(xmin)
     << "</text>\n"
     << "<text x=\"" << w - mr << "\" y=\"" << hgt - mb + 18
     << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
     << fmt(xmax) << "</text>\n"
     << "<text x=\"" << ml - 6 << "\" y=\"" << hgt - mb
     << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
     << fmt(ymin) << "</text>\n"
     << "<text x=\"" << ml - 6 << "\" y=\"" << mt + 10
     << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
     << fmt(ymax) << "</text>\n"
     << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.4\" "
        "points=\"";
  // cap the polyline at ~4000 vertices to keep files small
  const std::size_t stride = std::max<std::size_t>(1, x.size() / 4000);
  for (std::size_t j = 0; j < x.size(); j += stride) {
    os << px(x[j]) << ',' << py(y[j]) << ' ';
  }
  os << px(x.back()) << ',' << py(y.back());
  os << "\"/>\n</svg>\n";
  write_text(path, os.str());
}

}  // namespace spdc::io
