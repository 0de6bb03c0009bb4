#include "polsim/io.hpp"

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace polsim {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw std::runtime_error("double formatting failed");
  return std::string(buf, ptr);
}

void write_envelope_csv(const std::filesystem::path& path, const PhotonEnvelope& envelope) {
  std::ofstream out = open_out(path);
  out << "time_s,flux_plus,flux_minus\n";
  for (std::size_t i = 0; i < envelope.times.size(); ++i) {
    out << format_double(envelope.times[i]) << ',' << format_double(envelope.flux_plus[i]) << ','
        << format_double(envelope.flux_minus[i]) << '\n';
  }
}

void write_histogram_csv(const std::filesystem::path& path, const CoincidenceHistogram& hist) {
  std::ofstream out = open_out(path);
  out << "bin_left_s,bin_right_s,count\n";
  for (int i = 0; i < hist.n_bins(); ++i) {
    out << format_double(hist.bin_left(i)) << ','
        << format_double(hist.bin_left(i) + hist.bin_width) << ',' << hist.counts[i] << '\n';
  }
}

void write_coincidence_curves_csv(const std::filesystem::path& path, const CoincidenceCurve& par,
                                  const CoincidenceCurve& perp) {
  if (par.tau.size() != perp.tau.size())
    throw std::invalid_argument("coincidence curves live on different grids");
  std::ofstream out = open_out(path);
  out << "tau_s,c_parallel,c_perpendicular\n";
  for (std::size_t i = 0; i < par.tau.size(); ++i) {
    out << format_double(par.tau[i]) << ',' << format_double(par.value[i]) << ','
        << format_double(perp.value[i]) << '\n';
  }
}

void write_scan_csv(const std::filesystem::path& path, const std::vector<ScanPoint>& table) {
  std::ofstream out = open_out(path);
  out << "omega0_MHz,tp_us,visibility,p_plus_given_minus,p_minus_given_plus\n";
  for (const auto& row : table) {
    out << format_double(rad_to_mhz(row.omega0)) << ',' << format_double(row.t_p * 1e6) << ',';
    if (row.ok) {
      out << format_double(row.visibility) << ',' << format_double(row.p_plus_given_minus) << ','
          << format_double(row.p_minus_given_plus) << '\n';
    } else {
      out << "nan,nan,nan\n";
    }
  }
}

void write_emission_stream(const std::filesystem::path& path, const EmissionRecord& record,
                           const std::vector<CollapseChannel>& channels) {
  std::ofstream out = open_out(path);
  out << "# emission stream v1\n";
  out << "# columns: time_s channel_label\n";
  for (const auto& ev : record.events)
    out << format_double(ev.time) << ' ' << channels[ev.channel].label << '\n';
}

EmissionRecord read_emission_stream(const std::filesystem::path& path,
                                    const std::vector<CollapseChannel>& channels) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  EmissionRecord record;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    double t;
    std::string label;
    if (!(ls >> t >> label)) throw std::runtime_error("malformed emission line: " + line);
    int channel = -1;
    for (std::size_t k = 0; k < channels.size(); ++k)
      if (channels[k].label == label) channel = static_cast<int>(k);
    if (channel < 0) throw std::runtime_error("unknown channel label: " + label);
    record.events.push_back({t, channel});
  }
  return record;
}

void write_photon_stream(const std::filesystem::path& path,
                         const std::vector<MirrorPhoton>& photons) {
  std::ofstream out = open_out(path);
  out << "# mirror photon stream v1\n";
  out << "# columns: time_s channel_label\n";
  for (const auto& p : photons)
    out << format_double(p.time) << ' '
        << (p.pol == Polarization::SigmaPlus ? "out+" : "out-") << '\n';
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t hash = 0xCBF29CE484222325ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001B3ULL;
  }
  char buf[17];
  static const char* digits = "0123456789abcdef";
  for (int i = 15; i >= 0; --i) {
    buf[i] = digits[hash & 0xF];
    hash >>= 4;
  }
  buf[16] = '\0';
  return std::string(buf);
}

}  // namespace polsim
