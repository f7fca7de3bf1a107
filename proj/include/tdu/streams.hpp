#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tdu/common.hpp"
#include "tdu/errors.hpp"

namespace tdu {

/// Instantaneous utility over a real outcome interval. Built-in families plus
/// a tabulated piecewise-linear form. Strict monotonicity is an invariant for
/// well-formed instances but is *reported*, not enforced at construction, so
/// degenerate utilities (e.g. a constant tabulation) can be probed by
/// sensitivity checks.
class UtilityFunction {
  public:
    enum class Family { linear, crra, cara, logarithm, tabulated };

    static UtilityFunction linear(double a, double b);
    static UtilityFunction crra(double gamma);
    static UtilityFunction cara(double alpha);
    static UtilityFunction logarithm();
    static UtilityFunction tabulated(std::vector<double> xs, std::vector<double> ys);
    static UtilityFunction identity() { return linear(1.0, 0.0); }

    double operator()(double x) const; // throws DomainError outside the domain
    double inverse(double y) const;    // throws DomainError if y unattained or u not invertible

    bool in_domain(double x) const;
    double domain_lo() const { return lo_; }
    double domain_hi() const { return hi_; }

    // Issues found (non-increasing segments, bad parameters); empty = valid.
    std::vector<std::string> check() const;
    bool strictly_increasing() const { return check().empty(); }

    Family family() const { return family_; }
    double param_a() const { return a_; }
    double param_b() const { return b_; }
    double param_gamma() const { return gamma_; }
    double param_alpha() const { return alpha_; }
    const std::vector<double>& knots_x() const { return xs_; }
    const std::vector<double>& knots_y() const { return ys_; }

  private:
    UtilityFunction() = default;
    Family family_ = Family::linear;
    double a_ = 1.0, b_ = 0.0; // linear
    double gamma_ = 0.0;       // crra
    double alpha_ = 1.0;       // cara
    std::vector<double> xs_, ys_;
    double lo_ = -std::numeric_limits<double>::infinity();
    double hi_ = std::numeric_limits<double>::infinity();
    bool lo_strict_ = false;
};

struct StateSpace {
    std::vector<std::string> labels;

    explicit StateSpace(std::vector<std::string> labels_);
    static StateSpace numbered(int n); // labels "s0", "s1", ...

    int n() const { return static_cast<int>(labels.size()); }
    int index_of(const std::string& label) const; // -1 if absent
};

struct DiscountFactor {
    double value;
    explicit DiscountFactor(double b) : value(b) {
        if (!(b > 0.0 && b < 1.0))
            throw Error("discount factor must lie strictly inside (0,1), got " + std::to_string(b));
    }
};

/// Increasing information structure: partitions[0] = {Omega} and every later
/// partition refines its predecessor. Cells are state bitmasks.
class Filtration {
  public:
    Filtration(StateSpace states, std::vector<std::vector<std::uint32_t>> partitions);

    // F_0 trivial, full partition from t = 1 on.
    static Filtration standard(StateSpace states, int horizon);

    int horizon() const { return static_cast<int>(partitions_.size()) - 1; }
    int n_states() const { return states_.n(); }
    const StateSpace& states() const { return states_; }

    const std::vector<std::uint32_t>& cells(int t) const;
    // Past the stored horizon the finest (last) partition repeats.
    const std::vector<std::uint32_t>& cells_clamped(int t) const;

    bool measurable(int t, std::span<const double> values) const;
    Filtration extended_to(int horizon) const;

  private:
    StateSpace states_;
    std::vector<std::vector<std::uint32_t>> partitions_;
};

/// Finite-horizon payoff process with a constant continuation after the last
/// date: payoffs[t][w] for t <= horizon, then tail[w] forever.
struct Act {
    std::vector<std::vector<double>> payoffs; // [t][state]
    std::vector<double> tail;                 // [state]

    Act(std::vector<std::vector<double>> payoffs_, std::vector<double> tail_);

    int horizon() const { return static_cast<int>(payoffs.size()) - 1; }
    int n_states() const { return static_cast<int>(tail.size()); }

    double value_at(int t, int state) const {
        return t <= horizon() ? payoffs[static_cast<std::size_t>(t)][static_cast<std::size_t>(state)]
                              : tail[static_cast<std::size_t>(state)];
    }

    // The deterministic path t -> h_t(w) for one fixed state.
    std::vector<double> path(int state) const;
    double path_tail(int state) const { return tail[static_cast<std::size_t>(state)]; }

    bool is_deterministic() const; // constant across states at every date and in the tail

    static Act constant(double x, int n_states, int horizon);
    static Act deterministic(const std::vector<double>& stream, double tail_value, int n_states);
};

struct ActValidationReport {
    struct Violation {
        int t;              // date of the non-constant payoff (horizon+1 for the tail)
        std::uint32_t cell; // offending partition cell
        bool tail;
    };
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
    std::string to_string(const StateSpace& states) const;
};

/// Adaptedness check: every payoffs[t] constant on each cell of partitions[t],
/// tail constant on the cells at the act's horizon.
ActValidationReport validate_act(const Act& act, const Filtration& filt);

/// Per state w: sum_t beta^t u(h_t(w)) + beta^{T+1}/(1-beta) * u(tail(w)).
std::vector<double> util_act(const Act& act, const UtilityFunction& u, DiscountFactor beta);

/// New act (h_0,...,h_{t-1}, g, h_t, h_{t+1}, ...): periods from t shift one
/// date later; g must be measurable at date t.
Act insert_at(const Act& act, int t, std::span<const double> g, const Filtration& filt);

/// Removes period t and shifts every later period one date earlier; each moved
/// payoff (and the tail) must be measurable at its new, coarser date.
Act drop_at(const Act& act, int t, const Filtration& filt);

/// Act equal to `prefix` before date t and to `from` (including its tail)
/// from date t on. Used to build the axiom instances' shared-prefix pairs.
Act splice(const Act& prefix, const Act& from, int t);

} // namespace tdu
