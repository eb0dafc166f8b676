#pragma once

// State file:      {"format":"4nls-state/1","n_max":N,"coeffs":[[re,im],...]}
// Trajectory file: JSON lines. Header {"format":"4nls-traj/1","n_max":N,"t0":..,"dt":..}
//                  then one {"k":index,"coeffs":[...]} per state.
// Amplitudes are written with 17 significant digits, which round-trips doubles.

#include <filesystem>
#include <iosfwd>
#include <string>

#include "fournls/spectrum.hpp"

namespace fournls {

inline constexpr const char* kStateFormat = "4nls-state/1";
inline constexpr const char* kTrajectoryFormat = "4nls-traj/1";

std::string state_to_json(const FourierState& state);
FourierState state_from_json(const std::string& text);

void save_state(const FourierState& state, const std::filesystem::path& path);
FourierState load_state(const std::filesystem::path& path);

void write_trajectory(const Trajectory& traj, std::ostream& os);
Trajectory read_trajectory(std::istream& is);

void save_trajectory(const Trajectory& traj, const std::filesystem::path& path);
Trajectory load_trajectory(const std::filesystem::path& path);

}  // namespace fournls
