#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string_view>

namespace beliefdyn {

// Three-valued belief label. Serialization order is fixed: favor, ni, against.
enum class Stance : int { Favor = 0, NI = 1, Against = 2 };

inline constexpr std::array<Stance, 3> kStances{Stance::Favor, Stance::NI,
                                                Stance::Against};

constexpr std::string_view to_token(Stance s) {
  switch (s) {
    case Stance::Favor:
      return "favor";
    case Stance::NI:
      return "ni";
    case Stance::Against:
      return "against";
  }
  return "ni";
}

inline std::optional<Stance> stance_from_token(std::string_view token) {
  if (token == "favor") return Stance::Favor;
  if (token == "ni") return Stance::NI;
  if (token == "against") return Stance::Against;
  return std::nullopt;
}

// Rhetorical framing of an AI post. Human posts are always Neutral.
enum class StyleTag : int { Neutral = 0, Compassionate = 1, Condemnation = 2 };

constexpr std::string_view to_token(StyleTag s) {
  switch (s) {
    case StyleTag::Neutral:
      return "neutral";
    case StyleTag::Compassionate:
      return "compassionate";
    case StyleTag::Condemnation:
      return "condemnation";
  }
  return "neutral";
}

inline std::optional<StyleTag> style_from_token(std::string_view token) {
  if (token == "neutral") return StyleTag::Neutral;
  if (token == "compassionate") return StyleTag::Compassionate;
  if (token == "condemnation") return StyleTag::Condemnation;
  return std::nullopt;
}

// Shares over the three stances. A valid distribution sums to 1 within 1e-9
// with every component in [0, 1].
struct StanceDistribution {
  double favor = 0.0;
  double ni = 0.0;
  double against = 0.0;

  double operator[](Stance s) const {
    switch (s) {
      case Stance::Favor:
        return favor;
      case Stance::NI:
        return ni;
      case Stance::Against:
        return against;
    }
    return 0.0;
  }

  double& operator[](Stance s) {
    switch (s) {
      case Stance::NI:
        return ni;
      case Stance::Against:
        return against;
      default:
        return favor;
    }
  }

  double sum() const { return favor + ni + against; }

  bool valid(double tol = 1e-9) const {
    for (Stance s : kStances) {
      const double v = (*this)[s];
      if (!(v >= 0.0 && v <= 1.0)) return false;
    }
    return std::abs(sum() - 1.0) <= tol;
  }

  static StanceDistribution uniform() {
    return {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  }

  // Normalizes raw non-negative counts; counts must not all be zero.
  static StanceDistribution from_counts(double f, double n, double a) {
    const double total = f + n + a;
    return {f / total, n / total, a / total};
  }

  friend bool operator==(const StanceDistribution&,
                         const StanceDistribution&) = default;
};

}  // namespace beliefdyn
