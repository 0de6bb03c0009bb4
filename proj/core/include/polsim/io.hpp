#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "polsim/hom.hpp"
#include "polsim/histogram.hpp"
#include "polsim/sequence.hpp"

namespace polsim {

// CSV exports. All numeric formatting is locale-independent and fixed
// (shortest round-trip doubles), so identical inputs give identical bytes.
std::string format_double(double v);

void write_envelope_csv(const std::filesystem::path& path, const PhotonEnvelope& envelope);
void write_histogram_csv(const std::filesystem::path& path, const CoincidenceHistogram& hist);
void write_coincidence_curves_csv(const std::filesystem::path& path, const CoincidenceCurve& par,
                                  const CoincidenceCurve& perp);
void write_scan_csv(const std::filesystem::path& path, const std::vector<ScanPoint>& table);

// Emission streams: `time_s channel_label`, one event per line, after a
// commented header. Channel labels resolve against the collapse-channel list.
void write_emission_stream(const std::filesystem::path& path, const EmissionRecord& record,
                           const std::vector<CollapseChannel>& channels);
EmissionRecord read_emission_stream(const std::filesystem::path& path,
                                    const std::vector<CollapseChannel>& channels);

// Mirror photons only (polarization-tagged), same line format with labels
// out+/out-.
void write_photon_stream(const std::filesystem::path& path,
                         const std::vector<MirrorPhoton>& photons);

// FNV-1a hash of a string, hex-encoded; used to fingerprint configs.
std::string fnv1a_hex(const std::string& text);

}  // namespace polsim
