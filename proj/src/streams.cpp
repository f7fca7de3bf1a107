#include "tdu/streams.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace tdu {

// ---------------------------------------------------------------------------
// UtilityFunction

UtilityFunction UtilityFunction::linear(double a, double b) {
    UtilityFunction u;
    u.family_ = Family::linear;
    u.a_ = a;
    u.b_ = b;
    return u;
}

UtilityFunction UtilityFunction::crra(double gamma) {
    UtilityFunction u;
    u.family_ = Family::crra;
    u.gamma_ = gamma;
    u.lo_ = 0.0;
    u.lo_strict_ = gamma >= 1.0; // x^(1-gamma) blows up at 0 for gamma > 1
    return u;
}

UtilityFunction UtilityFunction::cara(double alpha) {
    UtilityFunction u;
    u.family_ = Family::cara;
    u.alpha_ = alpha;
    return u;
}

UtilityFunction UtilityFunction::logarithm() {
    UtilityFunction u;
    u.family_ = Family::logarithm;
    u.lo_ = 0.0;
    u.lo_strict_ = true;
    return u;
}

UtilityFunction UtilityFunction::tabulated(std::vector<double> xs, std::vector<double> ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw Error("tabulated utility needs >= 2 knots with matching xs/ys");
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (!(xs[i] > xs[i - 1]))
            throw Error("tabulated utility knots must have strictly increasing x");
    UtilityFunction u;
    u.family_ = Family::tabulated;
    u.xs_ = std::move(xs);
    u.ys_ = std::move(ys);
    u.lo_ = u.xs_.front();
    u.hi_ = u.xs_.back();
    return u;
}

bool UtilityFunction::in_domain(double x) const {
    if (!std::isfinite(x)) return false;
    if (lo_strict_ ? !(x > lo_) : !(x >= lo_)) return false;
    return x <= hi_;
}

double UtilityFunction::operator()(double x) const {
    if (!in_domain(x))
        throw DomainError("outcome " + std::to_string(x) + " outside utility domain");
    switch (family_) {
    case Family::linear: return a_ * x + b_;
    case Family::crra:
        if (gamma_ == 1.0) return std::log(x);
        return (std::pow(x, 1.0 - gamma_) - 1.0) / (1.0 - gamma_);
    case Family::cara: return (1.0 - std::exp(-alpha_ * x)) / alpha_;
    case Family::logarithm: return std::log(x);
    case Family::tabulated: {
        auto it = std::lower_bound(xs_.begin(), xs_.end(), x);
        if (it == xs_.begin()) return ys_.front();
        std::size_t i = static_cast<std::size_t>(it - xs_.begin());
        if (i == xs_.size()) return ys_.back(); // x == hi_ handled by lower_bound otherwise
        double w = (x - xs_[i - 1]) / (xs_[i] - xs_[i - 1]);
        return ys_[i - 1] + w * (ys_[i] - ys_[i - 1]);
    }
    }
    throw Error("unreachable utility family");
}

double UtilityFunction::inverse(double y) const {
    switch (family_) {
    case Family::linear:
        if (a_ == 0.0) throw DomainError("constant linear utility has no inverse");
        return (y - b_) / a_;
    case Family::crra: {
        if (gamma_ == 1.0) return std::exp(y);
        double z = 1.0 + (1.0 - gamma_) * y;
        if (z <= 0.0) throw DomainError("utility value unattained by crra");
        return std::pow(z, 1.0 / (1.0 - gamma_));
    }
    case Family::cara: {
        double z = 1.0 - alpha_ * y;
        if (z <= 0.0) throw DomainError("utility value unattained by cara");
        return -std::log(z) / alpha_;
    }
    case Family::logarithm: return std::exp(y);
    case Family::tabulated: {
        if (!check().empty()) throw DomainError("tabulated utility not strictly increasing, no inverse");
        if (y < ys_.front() - kEps || y > ys_.back() + kEps)
            throw DomainError("utility value outside tabulated range");
        double yc = std::clamp(y, ys_.front(), ys_.back());
        auto it = std::lower_bound(ys_.begin(), ys_.end(), yc);
        if (it == ys_.begin()) return xs_.front();
        std::size_t i = static_cast<std::size_t>(it - ys_.begin());
        if (i == ys_.size()) return xs_.back();
        double w = (yc - ys_[i - 1]) / (ys_[i] - ys_[i - 1]);
        return xs_[i - 1] + w * (xs_[i] - xs_[i - 1]);
    }
    }
    throw Error("unreachable utility family");
}

std::vector<std::string> UtilityFunction::check() const {
    std::vector<std::string> issues;
    switch (family_) {
    case Family::linear:
        if (!(a_ > 0.0)) issues.push_back("linear slope must be > 0 for strict increase");
        break;
    case Family::crra:
        if (gamma_ < 0.0) issues.push_back("crra gamma must be >= 0");
        break;
    case Family::cara:
        if (!(alpha_ > 0.0)) issues.push_back("cara alpha must be > 0");
        break;
    case Family::logarithm: break;
    case Family::tabulated:
        for (std::size_t i = 1; i < ys_.size(); ++i)
            if (!(ys_[i] > ys_[i - 1])) {
                std::ostringstream os;
                os << "tabulated values not strictly increasing at knot " << i;
                issues.push_back(os.str());
            }
        break;
    }
    return issues;
}

// ---------------------------------------------------------------------------
// StateSpace / Filtration

StateSpace::StateSpace(std::vector<std::string> labels_) : labels(std::move(labels_)) {
    if (labels.empty() || labels.size() > 16)
        throw Error("state space must have between 1 and 16 states");
    std::set<std::string> seen(labels.begin(), labels.end());
    if (seen.size() != labels.size()) throw Error("state labels must be distinct");
}

StateSpace StateSpace::numbered(int n) {
    std::vector<std::string> ls;
    ls.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) ls.push_back("s" + std::to_string(i));
    return StateSpace(std::move(ls));
}

int StateSpace::index_of(const std::string& label) const {
    for (int i = 0; i < n(); ++i)
        if (labels[static_cast<std::size_t>(i)] == label) return i;
    return -1;
}

namespace {

void check_partition(const std::vector<std::uint32_t>& cells, int n, int t) {
    std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
    std::uint32_t seen = 0;
    for (auto c : cells) {
        if (c == 0) throw Error("empty cell in partition at t=" + std::to_string(t));
        if (c & ~full) throw Error("cell references states beyond the state space");
        if (c & seen) throw Error("overlapping cells in partition at t=" + std::to_string(t));
        seen |= c;
    }
    if (seen != full) throw Error("partition at t=" + std::to_string(t) + " does not cover the state space");
}

bool refines(const std::vector<std::uint32_t>& fine, const std::vector<std::uint32_t>& coarse) {
    for (auto c : fine) {
        bool inside = false;
        for (auto b : coarse)
            if ((c & ~b) == 0) {
                inside = true;
                break;
            }
        if (!inside) return false;
    }
    return true;
}

} // namespace

Filtration::Filtration(StateSpace states, std::vector<std::vector<std::uint32_t>> partitions)
    : states_(std::move(states)), partitions_(std::move(partitions)) {
    if (partitions_.empty()) throw Error("filtration needs at least the date-0 partition");
    int n = states_.n();
    std::uint32_t full = (1u << n) - 1;
    if (partitions_[0].size() != 1 || partitions_[0][0] != full)
        throw Error("date-0 partition must be the trivial partition {Omega}");
    for (std::size_t t = 0; t < partitions_.size(); ++t) {
        check_partition(partitions_[t], n, static_cast<int>(t));
        if (t > 0 && !refines(partitions_[t], partitions_[t - 1]))
            throw Error("partition at t=" + std::to_string(t) + " does not refine its predecessor");
    }
}

Filtration Filtration::standard(StateSpace states, int horizon) {
    int n = states.n();
    std::vector<std::vector<std::uint32_t>> parts;
    parts.push_back({(1u << n) - 1});
    std::vector<std::uint32_t> full_cells;
    for (int w = 0; w < n; ++w) full_cells.push_back(1u << w);
    for (int t = 1; t <= horizon; ++t) parts.push_back(full_cells);
    return Filtration(std::move(states), std::move(parts));
}

const std::vector<std::uint32_t>& Filtration::cells(int t) const {
    if (t < 0 || t > horizon()) throw Error("filtration has no partition at t=" + std::to_string(t));
    return partitions_[static_cast<std::size_t>(t)];
}

const std::vector<std::uint32_t>& Filtration::cells_clamped(int t) const {
    if (t < 0) throw Error("negative date");
    return partitions_[static_cast<std::size_t>(std::min(t, horizon()))];
}

bool Filtration::measurable(int t, std::span<const double> values) const {
    if (static_cast<int>(values.size()) != n_states())
        throw DimensionMismatch("payoff vector length does not match state count");
    for (auto cell : cells_clamped(t)) {
        double ref = 0.0;
        bool first = true;
        for (int w = 0; w < n_states(); ++w) {
            if (!(cell >> w & 1u)) continue;
            if (first) {
                ref = values[static_cast<std::size_t>(w)];
                first = false;
            } else if (std::abs(values[static_cast<std::size_t>(w)] - ref) > kEps) {
                return false;
            }
        }
    }
    return true;
}

Filtration Filtration::extended_to(int horizon) const {
    if (horizon <= this->horizon()) return *this;
    auto parts = partitions_;
    while (static_cast<int>(parts.size()) - 1 < horizon) parts.push_back(parts.back());
    return Filtration(states_, std::move(parts));
}

// ---------------------------------------------------------------------------
// Act

Act::Act(std::vector<std::vector<double>> payoffs_, std::vector<double> tail_)
    : payoffs(std::move(payoffs_)), tail(std::move(tail_)) {
    if (payoffs.empty()) throw Error("act needs at least the date-0 payoff");
    if (tail.empty()) throw Error("act tail must not be empty");
    for (const auto& row : payoffs)
        if (row.size() != tail.size())
            throw DimensionMismatch("act payoff rows must all match the tail length");
}

std::vector<double> Act::path(int state) const {
    std::vector<double> d;
    d.reserve(payoffs.size());
    for (const auto& row : payoffs) d.push_back(row[static_cast<std::size_t>(state)]);
    return d;
}

bool Act::is_deterministic() const {
    auto flat = [&](const std::vector<double>& row) {
        for (double x : row)
            if (std::abs(x - row[0]) > kEps) return false;
        return true;
    };
    for (const auto& row : payoffs)
        if (!flat(row)) return false;
    return flat(tail);
}

Act Act::constant(double x, int n_states, int horizon) {
    std::vector<std::vector<double>> p(static_cast<std::size_t>(horizon + 1),
                                       std::vector<double>(static_cast<std::size_t>(n_states), x));
    return Act(std::move(p), std::vector<double>(static_cast<std::size_t>(n_states), x));
}

Act Act::deterministic(const std::vector<double>& stream, double tail_value, int n_states) {
    if (stream.empty()) throw Error("deterministic act needs at least one period");
    std::vector<std::vector<double>> p;
    p.reserve(stream.size());
    for (double x : stream) p.emplace_back(static_cast<std::size_t>(n_states), x);
    return Act(std::move(p), std::vector<double>(static_cast<std::size_t>(n_states), tail_value));
}

// ---------------------------------------------------------------------------
// Operations

std::string ActValidationReport::to_string(const StateSpace& states) const {
    if (ok()) return "adapted";
    std::ostringstream os;
    for (const auto& v : violations) {
        os << (v.tail ? "tail" : "t=" + std::to_string(v.t)) << " non-constant on cell {";
        bool first = true;
        for (int w = 0; w < states.n(); ++w)
            if (v.cell >> w & 1u) {
                if (!first) os << ",";
                os << states.labels[static_cast<std::size_t>(w)];
                first = false;
            }
        os << "}\n";
    }
    return os.str();
}

namespace {

bool constant_on_cell(std::span<const double> values, std::uint32_t cell) {
    double ref = 0.0;
    bool first = true;
    for (std::size_t w = 0; w < values.size(); ++w) {
        if (!(cell >> w & 1u)) continue;
        if (first) {
            ref = values[w];
            first = false;
        } else if (std::abs(values[w] - ref) > kEps) {
            return false;
        }
    }
    return true;
}

} // namespace

ActValidationReport validate_act(const Act& act, const Filtration& filt) {
    if (act.n_states() != filt.n_states())
        throw DimensionMismatch("act and filtration disagree on the number of states");
    if (act.horizon() > filt.horizon())
        throw DimensionMismatch("act horizon exceeds filtration horizon");
    ActValidationReport report;
    for (int t = 0; t <= act.horizon(); ++t)
        for (auto cell : filt.cells(t))
            if (!constant_on_cell(act.payoffs[static_cast<std::size_t>(t)], cell))
                report.violations.push_back({t, cell, false});
    for (auto cell : filt.cells(act.horizon()))
        if (!constant_on_cell(act.tail, cell))
            report.violations.push_back({act.horizon() + 1, cell, true});
    return report;
}

std::vector<double> util_act(const Act& act, const UtilityFunction& u, DiscountFactor beta) {
    int n = act.n_states();
    int T = act.horizon();
    for (int t = 0; t <= T; ++t)
        for (int w = 0; w < n; ++w)
            if (!u.in_domain(act.payoffs[static_cast<std::size_t>(t)][static_cast<std::size_t>(w)]))
                throw DomainError("payoff at t=" + std::to_string(t) + ", state " + std::to_string(w) +
                                  " outside utility domain");
    for (int w = 0; w < n; ++w)
        if (!u.in_domain(act.tail[static_cast<std::size_t>(w)]))
            throw DomainError("tail payoff in state " + std::to_string(w) + " outside utility domain");

    std::vector<double> out(static_cast<std::size_t>(n), 0.0);
    for (int w = 0; w < n; ++w) {
        double sum = 0.0;
        double disc = 1.0;
        for (int t = 0; t <= T; ++t) {
            sum += disc * u(act.payoffs[static_cast<std::size_t>(t)][static_cast<std::size_t>(w)]);
            disc *= beta.value;
        }
        // disc is now beta^{T+1}; the constant continuation sums in closed form
        sum += disc / (1.0 - beta.value) * u(act.tail[static_cast<std::size_t>(w)]);
        out[static_cast<std::size_t>(w)] = sum;
    }
    return out;
}

Act insert_at(const Act& act, int t, std::span<const double> g, const Filtration& filt) {
    if (static_cast<int>(g.size()) != act.n_states())
        throw DimensionMismatch("inserted payoff length does not match the act's state count");
    if (t < 0 || t > act.horizon() + 1)
        throw Error("insertion date must lie in [0, horizon+1]");
    if (!filt.measurable(t, g)) {
        for (auto cell : filt.cells_clamped(t))
            if (!constant_on_cell(g, cell))
                throw MeasurabilityViolation("inserted payoff not measurable at t=" + std::to_string(t), t,
                                             cell);
    }
    std::vector<std::vector<double>> p;
    p.reserve(act.payoffs.size() + 1);
    for (int i = 0; i < t; ++i) p.push_back(act.payoffs[static_cast<std::size_t>(i)]);
    p.emplace_back(g.begin(), g.end());
    for (int i = t; i <= act.horizon(); ++i) p.push_back(act.payoffs[static_cast<std::size_t>(i)]);
    return Act(std::move(p), act.tail);
}

Act drop_at(const Act& act, int t, const Filtration& filt) {
    if (t < 0 || t > act.horizon()) throw Error("drop date must lie in [0, horizon]");
    int T = act.horizon();
    for (int i = t + 1; i <= T; ++i) {
        const auto& row = act.payoffs[static_cast<std::size_t>(i)];
        if (!filt.measurable(i - 1, row)) {
            for (auto cell : filt.cells_clamped(i - 1))
                if (!constant_on_cell(row, cell))
                    throw MeasurabilityViolation("payoff moved to t=" + std::to_string(i - 1) +
                                                     " is not measurable there",
                                                 i - 1, cell);
        }
    }
    int new_T = T == 0 ? 0 : T - 1;
    if (!filt.measurable(new_T, act.tail)) {
        for (auto cell : filt.cells_clamped(new_T))
            if (!constant_on_cell(act.tail, cell))
                throw MeasurabilityViolation("tail is not measurable at the shortened horizon", new_T, cell);
    }
    std::vector<std::vector<double>> p;
    for (int i = 0; i <= T; ++i)
        if (i != t) p.push_back(act.payoffs[static_cast<std::size_t>(i)]);
    if (p.empty()) p.push_back(act.tail); // dropped the only period; the tail takes over
    return Act(std::move(p), act.tail);
}

Act splice(const Act& prefix, const Act& from, int t) {
    if (prefix.n_states() != from.n_states())
        throw DimensionMismatch("spliced acts disagree on the number of states");
    int T = std::max(t - 1, from.horizon());
    std::vector<std::vector<double>> p;
    p.reserve(static_cast<std::size_t>(T + 1));
    int n = from.n_states();
    for (int i = 0; i <= T; ++i) {
        std::vector<double> row(static_cast<std::size_t>(n));
        for (int w = 0; w < n; ++w)
            row[static_cast<std::size_t>(w)] = i < t ? prefix.value_at(i, w) : from.value_at(i, w);
        p.push_back(std::move(row));
    }
    return Act(std::move(p), from.tail);
}

} // namespace tdu
