#pragma once

// Radial profiles phi(r) = beta * base(r) for the built-in families, plus
// tabulated custom profiles, and validators for the density conditions.

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "radial/geometry.hpp"

namespace radial {

enum class ProfileKind { kGaussian, kLaplacian, kPower, kVonMisesFisher, kCustom };

std::string to_string(ProfileKind kind);
/// Accepts "gaussian", "laplacian", "power", "vmf", "custom".
ProfileKind parse_profile_kind(std::string_view name);

class CustomTable;

class RadialProfile {
 public:
  /// Built-in family. Power requires p > 1; beta must be positive.
  static RadialProfile make(ProfileKind kind, double beta, std::optional<double> p = {});

  /// Tabulated profile: r strictly increasing from 0, phi nondecreasing and
  /// phi(0) >= 0. Interpolated by a monotone cubic; extended linearly past the
  /// last node with the slope of the final segment.
  static RadialProfile custom(std::vector<double> r, std::vector<double> phi, double beta = 1.0);

  /// Two-column CSV "r,phi" (optional header line). Errors carry file:line.
  static RadialProfile custom_from_csv(const std::filesystem::path& path, double beta = 1.0);

  ProfileKind kind() const { return kind_; }
  double beta() const { return beta_; }
  std::optional<double> exponent() const { return p_; }

  /// Same family with a different temperature.
  RadialProfile with_beta(double beta) const;

  double operator()(double r) const { return beta_ * base(r); }
  double derivative(double r) const { return beta_ * base_derivative(r); }
  std::optional<double> second_derivative(double r) const;

  /// The profile with beta = 1.
  double base(double r) const;
  double base_derivative(double r) const;

  /// Upper end of the domain: pi for vMF, infinity otherwise.
  double domain_max() const;
  bool differentiable() const { return true; }

  std::string name() const;

 private:
  RadialProfile(ProfileKind kind, double beta, std::optional<double> p,
                std::shared_ptr<const CustomTable> table);

  ProfileKind kind_;
  double beta_;
  std::optional<double> p_;
  std::shared_ptr<const CustomTable> table_;
};

struct IntegrabilityVerdict {
  bool pass = false;
  std::string reason;
};

/// Whether exp(-phi(d(x, alpha))) is integrable over the manifold. Compact
/// spaces always pass; built-in families on noncompact spaces are decided in
/// closed form; custom profiles by locating tail decay within r <= 200.
/// Throws IndeterminateError when a custom tail cannot be resolved.
IntegrabilityVerdict check_integrability(const RadialProfile& profile, const Manifold& manifold);

struct RegularityReport {
  bool lipschitz_ok = false;
  bool strictly_increasing_ok = false;
  bool differentiable_ok = false;
  std::string note;
};

/// Grid checks (1e4 points) of the Lipschitz and strict-monotonicity
/// conditions on [0, min(r_max, domain, 200)].
RegularityReport check_regularity(const RadialProfile& profile, const Manifold& manifold);

}  // namespace radial
