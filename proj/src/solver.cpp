#include "pcba/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "parallel.hpp"
#include "pcba/errors.hpp"
#include "pcba/problems.hpp"

namespace pcba {

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal: return "Optimal";
    case SolveStatus::Infeasible: return "Infeasible";
    case SolveStatus::CapReached: return "CapReached";
  }
  return "?";
}

std::size_t SolverResult::peak_items() const {
  std::size_t peak = 0;
  for (const auto& s : stats) peak = std::max(peak, s.item_count);
  return peak;
}

std::uint64_t SolverResult::peak_bytes() const {
  std::uint64_t peak = 0;
  for (const auto& s : stats) peak = std::max(peak, s.estimated_bytes);
  return peak;
}

// ---------------------------------------------------------------------------
// Item

Item::Item(Box box, std::vector<double> coefficients,
           std::shared_ptr<const ItemLayout> layout)
    : box_(std::move(box)), coefficients_(std::move(coefficients)), layout_(std::move(layout)) {
  if (!layout_) throw ContractViolation("item needs a layout");
  if (box_.dimension() != layout_->dimension) {
    throw ContractViolation("item box dimension does not match layout");
  }
  if (coefficients_.size() != layout_->coefficient_count()) {
    throw ContractViolation("item coefficient count does not match layout");
  }
}

Item::Item(Box box, const Patch& cost, std::span<const Patch> ineqs,
           std::span<const Patch> eqs, std::shared_ptr<const ItemLayout> layout)
    : box_(std::move(box)), layout_(std::move(layout)) {
  if (!layout_) throw ContractViolation("item needs a layout");
  if (cost.shape() != layout_->cost_shape || ineqs.size() != layout_->ineq_count ||
      eqs.size() != layout_->eq_count) {
    throw ContractViolation("item patches do not match layout");
  }
  coefficients_.reserve(layout_->coefficient_count());
  auto append = [&](const Patch& p, const Shape& expected) {
    if (p.shape() != expected) throw ContractViolation("constraint patch shape mismatch");
    coefficients_.insert(coefficients_.end(), p.coefficients().begin(),
                         p.coefficients().end());
  };
  append(cost, layout_->cost_shape);
  for (const auto& p : ineqs) append(p, layout_->ineq_shape);
  for (const auto& p : eqs) append(p, layout_->eq_shape);
}

PatchView Item::cost_patch() const {
  return {layout_->cost_shape,
          std::span<const double>(coefficients_).first(layout_->cost_size())};
}

PatchView Item::ineq_patch(std::size_t i) const {
  if (i >= layout_->ineq_count) throw ContractViolation("inequality index out of range");
  const std::size_t offset = layout_->cost_size() + i * layout_->ineq_size();
  return {layout_->ineq_shape,
          std::span<const double>(coefficients_).subspan(offset, layout_->ineq_size())};
}

PatchView Item::eq_patch(std::size_t j) const {
  if (j >= layout_->eq_count) throw ContractViolation("equality index out of range");
  const std::size_t offset = layout_->cost_size() +
                             layout_->ineq_count * layout_->ineq_size() +
                             j * layout_->eq_size();
  return {layout_->eq_shape,
          std::span<const double>(coefficients_).subspan(offset, layout_->eq_size())};
}

Item Item::split(std::size_t direction) {
  const ItemLayout& layout = *layout_;
  std::vector<double> right(coefficients_.size());
  std::span<double> left_span(coefficients_);
  std::span<double> right_span(right);
  std::size_t offset = 0;
  auto split_segment = [&](const Shape& shape, std::size_t size) {
    subdivide_in_place(left_span.subspan(offset, size), right_span.subspan(offset, size),
                       shape, direction);
    offset += size;
  };
  split_segment(layout.cost_shape, layout.cost_size());
  for (std::size_t i = 0; i < layout.ineq_count; ++i) {
    split_segment(layout.ineq_shape, layout.ineq_size());
  }
  for (std::size_t j = 0; j < layout.eq_count; ++j) {
    split_segment(layout.eq_shape, layout.eq_size());
  }
  auto [left_box, right_box] = subdivide_box(box_, direction);
  box_ = std::move(left_box);
  return Item(std::move(right_box), std::move(right), layout_);
}

// ---------------------------------------------------------------------------
// Loop stages

namespace {

bool ineq_all_satisfied(const ItemBounds& b) {
  return std::all_of(b.ineq.begin(), b.ineq.end(),
                     [](const PatchBounds& g) { return g.max <= 0.0; });
}

bool ineq_none_violated(const ItemBounds& b) {
  return std::all_of(b.ineq.begin(), b.ineq.end(),
                     [](const PatchBounds& g) { return g.min <= 0.0; });
}

bool eq_within_band(const ItemBounds& b, double eps_eq) {
  return std::all_of(b.eq.begin(), b.eq.end(), [eps_eq](const PatchBounds& h) {
    return -eps_eq <= h.min && h.min <= 0.0 && 0.0 <= h.max && h.max <= eps_eq;
  });
}

bool eq_none_violated(const ItemBounds& b) {
  return std::all_of(b.eq.begin(), b.eq.end(),
                     [](const PatchBounds& h) { return h.min <= 0.0 && h.max >= 0.0; });
}

}  // namespace

Feasibility classify(const ItemBounds& bounds, double eps_eq) {
  if (!ineq_none_violated(bounds) || !eq_none_violated(bounds)) return Feasibility::Infeasible;
  if (ineq_all_satisfied(bounds) && eq_within_band(bounds, eps_eq)) {
    return Feasibility::Feasible;
  }
  return Feasibility::Undecided;
}

std::vector<Item> subdivide_all(std::vector<Item> items, std::size_t direction,
                                unsigned thread_count) {
  const std::size_t count = items.size();
  std::vector<std::optional<Item>> rights(count);
  detail::parallel_for(count, detail::resolve_thread_count(thread_count),
                       [&](std::size_t k) { rights[k].emplace(items[k].split(direction)); });
  items.reserve(2 * count);
  for (auto& right : rights) items.push_back(std::move(*right));
  return items;
}

std::vector<ItemBounds> find_bounds(std::span<const Item> items, unsigned thread_count) {
  std::vector<ItemBounds> out(items.size());
  detail::parallel_for(items.size(), detail::resolve_thread_count(thread_count),
                       [&](std::size_t k) {
                         const Item& item = items[k];
                         const ItemLayout& layout = item.layout();
                         ItemBounds& b = out[k];
                         b.cost = patch_bounds(item.cost_patch());
                         b.ineq.resize(layout.ineq_count);
                         for (std::size_t i = 0; i < layout.ineq_count; ++i) {
                           b.ineq[i] = patch_bounds(item.ineq_patch(i));
                         }
                         b.eq.resize(layout.eq_count);
                         for (std::size_t j = 0; j < layout.eq_count; ++j) {
                           b.eq[j] = patch_bounds(item.eq_patch(j));
                         }
                       });
  return out;
}

CutOffResult cut_off_test(std::span<const ItemBounds> bounds) {
  CutOffResult out;
  // Upper estimate from items whose inequalities hold everywhere and whose
  // equality bounds straddle zero; the equality band is left to the stopping
  // test. Lower bound and the keep test use every item that is not
  // certified infeasible.
  for (const auto& b : bounds) {
    if (ineq_all_satisfied(b) && eq_none_violated(b)) {
      out.p_up = std::min(out.p_up, b.cost.max);
    }
    if (ineq_none_violated(b) && eq_none_violated(b)) {
      out.p_lo = std::min(out.p_lo, b.cost.min);
    }
  }
  for (std::size_t k = 0; k < bounds.size(); ++k) {
    const auto& b = bounds[k];
    if (ineq_none_violated(b) && eq_none_violated(b) && b.cost.min <= out.p_up) {
      out.save.push_back(k);
    } else {
      out.elim.push_back(k);
    }
  }
  return out;
}

std::vector<Item> eliminate(std::vector<Item> items, std::span<const std::size_t> save,
                            std::span<const std::size_t> elim) {
  if (save.size() + elim.size() != items.size()) {
    throw ContractViolation("eliminate: save and elim must partition the list");
  }
  std::vector<char> seen(items.size(), 0);
  for (auto idx : {save, elim}) {
    for (std::size_t k : idx) {
      if (k >= items.size() || seen[k]) {
        throw ContractViolation("eliminate: save and elim must partition the list");
      }
      seen[k] = 1;
    }
  }
  std::vector<Item> out;
  out.reserve(save.size());
  for (std::size_t k : save) out.push_back(std::move(items[k]));
  return out;
}

std::uint64_t estimated_bytes(const ItemLayout& layout, std::size_t item_count) {
  return std::uint64_t{4} * item_count * layout.entries_per_item();
}

// ---------------------------------------------------------------------------
// Setup

std::shared_ptr<const ItemLayout> make_layout(const ProblemSpec& problem) {
  auto layout = std::make_shared<ItemLayout>();
  const std::size_t l = problem.dimension();
  layout->dimension = l;
  layout->cost_shape = shape_of(problem.cost.multi_degree());
  MultiIndex g(l), h(l);
  for (const auto& p : problem.ineqs) g = max(g, p.multi_degree());
  for (const auto& p : problem.eqs) h = max(h, p.multi_degree());
  layout->ineq_shape = shape_of(g);
  layout->eq_shape = shape_of(h);
  layout->ineq_count = problem.ineqs.size();
  layout->eq_count = problem.eqs.size();
  return layout;
}

Item make_root_item(const ProblemSpec& problem, std::shared_ptr<const ItemLayout> layout) {
  const Box& domain = problem.domain;
  auto convert = [&](const Polynomial& p, const Shape& shape) {
    return to_bernstein(rescale_to_unit(p, domain), shape);
  };
  std::vector<Patch> ineqs, eqs;
  ineqs.reserve(problem.ineqs.size());
  for (const auto& g : problem.ineqs) ineqs.push_back(convert(g, layout->ineq_shape));
  for (const auto& h : problem.eqs) eqs.push_back(convert(h, layout->eq_shape));
  Patch cost = convert(problem.cost, layout->cost_shape);
  return Item(Box::unit(problem.dimension()), cost, ineqs, eqs, std::move(layout));
}

double auto_eps(const ProblemSpec& problem) {
  const Patch cost = to_bernstein(rescale_to_unit(problem.cost, problem.domain));
  const PatchBounds b = patch_bounds(cost);
  return 1e-7 * (b.max - b.min);
}

Point to_domain(const Box& domain, std::span<const double> u) {
  Point x(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) x[i] = domain.lower(i) + u[i] * domain.extent(i);
  return x;
}

Point to_unit(const Box& domain, std::span<const double> x) {
  Point u(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) u[i] = (x[i] - domain.lower(i)) / domain.extent(i);
  return u;
}

Box box_to_domain(const Box& domain, const Box& unit_box) {
  return Box(to_domain(domain, unit_box.lower()), to_domain(domain, unit_box.upper()));
}

// ---------------------------------------------------------------------------
// Main loop

namespace {

void validate(const SolverConfig& config) {
  if (!config.eps_auto && !(config.eps > 0.0)) {
    throw ContractViolation("optimality tolerance must be > 0");
  }
  if (!(config.eps_eq > 0.0)) throw ContractViolation("equality tolerance must be > 0");
  if (!(config.delta >= 0.0)) throw ContractViolation("step tolerance must be >= 0");
  if (config.max_iterations < 1) throw ContractViolation("max_iterations must be >= 1");
  if (config.max_items < 1) throw ContractViolation("max_items must be >= 1");
}

// First candidate item whose upper cost bound equals p_up.
std::optional<Box> pick_solution(std::span<const Item> items,
                                 std::span<const ItemBounds> bounds, double p_up) {
  if (!std::isfinite(p_up)) return std::nullopt;
  for (std::size_t k = 0; k < items.size(); ++k) {
    if (bounds[k].cost.max == p_up && ineq_all_satisfied(bounds[k]) &&
        eq_none_violated(bounds[k])) {
      return items[k].box();
    }
  }
  return std::nullopt;
}

}  // namespace

SolverResult solve(const ProblemSpec& problem, const SolverConfig& config,
                   const SolveObserver& observer) {
  problem.validate();
  validate(config);

  SolverResult result;
  result.eps = config.eps_auto ? auto_eps(problem) : config.eps;
  const unsigned threads = detail::resolve_thread_count(config.thread_count);
  const std::size_t l = problem.dimension();

  auto layout = make_layout(problem);
  std::vector<Item> items;
  items.push_back(make_root_item(problem, layout));
  std::vector<ItemBounds> bounds{find_bounds(items, 1)};

  unsigned n = 1;
  std::size_t r = 0;
  while (true) {
    if (2 * items.size() > config.max_items) {
      result.status = SolveStatus::CapReached;
      break;
    }
    items = subdivide_all(std::move(items), r, threads);
    bounds = find_bounds(items, threads);
    CutOffResult cut = cut_off_test(bounds);

    IterationStats stats;
    stats.iteration = n;
    stats.direction = r;
    stats.item_count = items.size();
    stats.estimated_bytes = estimated_bytes(*layout, items.size());
    stats.kept_count = cut.save.size();
    stats.p_up = cut.p_up;
    stats.p_lo = cut.p_lo;
    result.stats.push_back(stats);
    result.p_up = cut.p_up;
    result.p_lo = cut.p_lo;
    result.iterations = n;

    if (cut.save.empty()) {
      result.status = SolveStatus::Infeasible;
      return result;
    }

    double width = 0.0;
    for (const auto& item : items) width = std::max(width, item.box().width());
    const bool eq_settled = std::all_of(cut.save.begin(), cut.save.end(), [&](std::size_t k) {
      return std::all_of(bounds[k].eq.begin(), bounds[k].eq.end(), [&](const PatchBounds& h) {
        return -config.eps_eq <= h.min && h.max <= config.eps_eq;
      });
    });
    if (std::isfinite(cut.p_up) && cut.p_up - cut.p_lo <= result.eps &&
        (config.delta <= 0.0 || width <= config.delta) && eq_settled) {
      result.status = SolveStatus::Optimal;
      break;
    }

    items = eliminate(std::move(items), cut.save, cut.elim);
    std::vector<ItemBounds> kept;
    kept.reserve(cut.save.size());
    for (std::size_t k : cut.save) kept.push_back(std::move(bounds[k]));
    bounds = std::move(kept);
    if (observer) observer(IterationSnapshot{result.stats.back(), items});

    if (++r == l) {
      r = 0;
      if (n == config.max_iterations) {
        result.status = SolveStatus::CapReached;
        break;
      }
      ++n;
    }
  }

  if (auto unit_box = pick_solution(items, bounds, result.p_up)) {
    result.solution_box = box_to_domain(problem.domain, *unit_box);
  }
  return result;
}

}  // namespace pcba
