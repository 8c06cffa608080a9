#pragma once

// Parameterized numerical studies. Each run is a pure function of its
// arguments and returns its results as a RunOutput; nothing here touches the
// filesystem.

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "boundpair/model.hpp"

namespace boundpair {

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

using ProvenanceValue = std::variant<double, std::int64_t, std::string>;

struct RunOutput {
  std::string experiment;
  std::vector<std::pair<std::string, double>> summary;
  std::vector<Table> tables;
  std::vector<std::pair<std::string, ProvenanceValue>> provenance;

  void set(std::string key, double value);
  void echo(std::string key, ProvenanceValue value);
  bool has(std::string_view key) const;
  // Throws std::out_of_range for unknown keys / tables.
  double value(std::string_view key) const;
  const Table& table(std::string_view name) const;
};

// Numeric bound band against the closed form on every grid momentum.
// Table "band": k, eps_num, eps_ana, lambda, cont_lo, cont_hi.
RunOutput band_scan(const LatticeParams& params, int jobs = 1);

// BP packet evolved under the full two-boson Hamiltonian for time tau.
// Tables profile_t000 (t = 0) and profile_t001 (t = tau): site, n_sp, n_bp,
// with the pair density in n_bp.
RunOutput packet_evolution(const LatticeParams& params, const PacketSpec& spec, double tau,
                           int jobs = 1);

// Loschmidt echo of the band packet against its linearized dispersion,
// exact and cubic. Table "fidelity": t, ell, F_exact, F_cubic.
RunOutput fidelity_scan(const LatticeParams& params, const PacketSpec& spec,
                        const std::vector<double>& times);

struct ScatterOptions {
  double stop_time = 0.0;  // <= 0: automatic
  int snapshots = 10;
};

// SP packet meeting a BP packet in the hardcore ring model. The BP packet
// is a b-tilde Gaussian; bp_spec.k0 sets its carrier momentum.
RunOutput scattering_run(const LatticeParams& params, const PacketSpec& sp_spec,
                         const PacketSpec& bp_spec, double swap_amplitude,
                         const ScatterOptions& options = {});

struct SwitchOptions {
  double stop_time = 0.0;  // <= 0: automatic
};

// Sequential SP packets from the left lead scattering off the BP charge
// qubit. Between packets the qubit carries its reduced state.
RunOutput switch_run(const SwitchConfig& cfg, const QubitState& qubit_init, int n_packets,
                     const PacketSpec& sp_spec, const SwitchOptions& options = {});

}  // namespace boundpair
