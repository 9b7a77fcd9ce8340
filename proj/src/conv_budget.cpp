#include "vfp/conv_budget.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "vfp/csv.hpp"
#include "vfp/error.hpp"

namespace vfp {

namespace {

bool is_coverage_key(int i) {
  return std::find(std::begin(kCoverageKeys), std::end(kCoverageKeys), i) != std::end(kCoverageKeys);
}

ConvBudget empty_budget(Strategy s, GridDims dims) {
  ConvBudget b;
  b.strategy = s;
  b.dims = dims;
  for (int key : kCoverageKeys) b.counts[key] = 0;
  return b;
}

std::string dims_text(GridDims d) { return std::to_string(d.rows) + "x" + std::to_string(d.cols); }

}  // namespace

std::int64_t ConvBudget::count(int features) const {
  const auto it = counts.find(features);
  return it == counts.end() ? 0 : it->second;
}

bool closed_form_supported(Strategy s, GridDims d) noexcept {
  const std::size_t min_side = s == Strategy::None ? 3 : 2;
  return d.rows >= min_side && d.cols >= min_side;
}

ConvBudget closed_form(Strategy s, GridDims dims) {
  if (!closed_form_supported(s, dims)) {
    throw Error(ErrorCode::UnsupportedDims,
                std::string("closed form for ") + to_string(s) + " needs both grid sides >= " +
                    (s == Strategy::None ? "3" : "2") + ", got " + dims_text(dims));
  }
  const auto m = static_cast<std::int64_t>(dims.rows);
  const auto n = static_cast<std::int64_t>(dims.cols);
  ConvBudget b = empty_budget(s, dims);
  switch (s) {
    case Strategy::None:
      b.counts[9] = (m - 2) * (n - 2);
      b.total = (m - 2) * (n - 2);
      break;
    case Strategy::Zpos1:
      b.counts[4] = 4;
      b.counts[6] = 2 * m + 2 * n - 8;
      b.counts[9] = m * n - 2 * m - 2 * n + 4;
      b.total = m * n;
      break;
    case Strategy::Zpos2:
      b.counts[1] = 4;
      b.counts[2] = 8;
      b.counts[3] = 2 * m + 2 * n - 8;
      b.counts[4] = 4;
      b.counts[6] = 2 * m + 2 * n - 8;
      b.counts[9] = m * n - 2 * m - 2 * n + 4;
      b.total = m * n + 2 * m + 2 * n + 4;
      break;
    case Strategy::Distancing:
      b.counts[1] = m * n;
      b.counts[2] = 2 * m * n - m - n;
      b.counts[4] = m * n - m - n + 1;
      b.total = 4 * m * n - 2 * m - 2 * n + 1;
      break;
  }
  return b;
}

ConvBudget brute_force(Strategy s, GridDims dims) {
  if (dims.rows == 0 || dims.cols == 0) {
    throw Error(ErrorCode::InvalidArgument, "brute_force: grid dimensions must be positive");
  }
  const auto mask = occupancy_mask(s, dims);
  if (mask.rows() < 3 || mask.cols() < 3) {
    throw Error(ErrorCode::ImageTooSmall, std::string(to_string(s)) + " image for grid " +
                                              dims_text(dims) + " is " +
                                              std::to_string(mask.rows()) + "x" +
                                              std::to_string(mask.cols()) +
                                              ", smaller than a 3x3 kernel");
  }
  ConvBudget b = empty_budget(s, dims);
  for (std::size_t r = 0; r + 3 <= mask.rows(); ++r) {
    for (std::size_t c = 0; c + 3 <= mask.cols(); ++c) {
      int covered = 0;
      for (std::size_t dr = 0; dr < 3; ++dr) {
        for (std::size_t dc = 0; dc < 3; ++dc) covered += mask(r + dr, c + dc);
      }
      if (is_coverage_key(covered)) {
        ++b.counts[covered];
      } else {
        ++b.unexpected[covered];
      }
      ++b.total;
    }
  }
  return b;
}

const char* budget_formula(Strategy s, int features) noexcept {
  switch (s) {
    case Strategy::None:
      if (features == 9 || features == 0) return "(m-2)(n-2)";
      break;
    case Strategy::Zpos1:
      switch (features) {
        case 4: return "4";
        case 6: return "2m+2n-8";
        case 9: return "mn-2m-2n+4";
        case 0: return "mn";
      }
      break;
    case Strategy::Zpos2:
      switch (features) {
        case 1: return "4";
        case 2: return "8";
        case 3: return "2m+2n-8";
        case 4: return "4";
        case 6: return "2m+2n-8";
        case 9: return "mn-2m-2n+4";
        case 0: return "mn+2m+2n+4";
      }
      break;
    case Strategy::Distancing:
      switch (features) {
        case 1: return "mn";
        case 2: return "2mn-m-n";
        case 4: return "mn-m-n+1";
        case 0: return "4mn-2m-2n+1";
      }
      break;
  }
  return "N/A";
}

bool BudgetReport::all_agree() const {
  return std::all_of(rows.begin(), rows.end(), [](const BudgetRow& r) { return r.agree(); });
}

BudgetReport budget_report(std::span<const GridDims> dims, std::span<const Strategy> strategies) {
  if (dims.empty()) throw Error(ErrorCode::InvalidArgument, "budget report: no grid sizes given");
  if (strategies.empty()) throw Error(ErrorCode::InvalidArgument, "budget report: no strategies given");
  BudgetReport report;
  for (GridDims d : dims) {
    for (Strategy s : strategies) {
      BudgetRow row;
      row.dims = d;
      row.strategy = s;
      row.image = image_size(s, d);
      row.closed = closed_form(s, d);
      row.brute = brute_force(s, d);
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

std::string format_table(const BudgetReport& report) {
  std::ostringstream out;
  std::size_t i = 0;
  while (i < report.rows.size()) {
    const GridDims d = report.rows[i].dims;
    std::vector<const BudgetRow*> block;
    for (; i < report.rows.size() && report.rows[i].dims == d; ++i) block.push_back(&report.rows[i]);

    // Cell text: "<formula> = <closed-form value>", starred when brute force disagrees.
    auto cell = [](const BudgetRow& r, int features) {
      const char* f = budget_formula(r.strategy, features);
      if (features != 0 && std::string(f) == "N/A" && r.brute.count(features) == 0) {
        return std::string("N/A");
      }
      const auto closed = features == 0 ? r.closed.total : r.closed.count(features);
      const auto brute = features == 0 ? r.brute.total : r.brute.count(features);
      std::string text = std::string(f) + " = " + std::to_string(closed);
      if (closed != brute) text += " * brute " + std::to_string(brute);
      return text;
    };

    std::vector<std::vector<std::string>> grid;
    std::vector<std::string> header{"features"};
    std::vector<std::string> image{"image"};
    for (const auto* r : block) {
      header.emplace_back(to_string(r->strategy));
      image.push_back(std::to_string(r->image.height) + "x" + std::to_string(r->image.width));
    }
    grid.push_back(header);
    for (int key : kCoverageKeys) {
      std::vector<std::string> line{std::to_string(key)};
      for (const auto* r : block) line.push_back(cell(*r, key));
      grid.push_back(line);
    }
    std::vector<std::string> total{"all"};
    for (const auto* r : block) total.push_back(cell(*r, 0));
    grid.push_back(total);
    grid.push_back(image);

    std::vector<std::size_t> width(header.size(), 0);
    for (const auto& line : grid) {
      for (std::size_t c = 0; c < line.size(); ++c) width[c] = std::max(width[c], line[c].size());
    }

    out << "grid " << dims_text(d) << " (m=" << d.rows << ", n=" << d.cols << ")\n";
    for (std::size_t l = 0; l < grid.size(); ++l) {
      for (std::size_t c = 0; c < grid[l].size(); ++c) {
        if (c) out << " | ";
        out << std::left << std::setw(static_cast<int>(width[c])) << grid[l][c];
      }
      out << '\n';
      if (l == 0 || l + 2 == grid.size()) {
        for (std::size_t c = 0; c < width.size(); ++c) {
          if (c) out << "-+-";
          out << std::string(width[c], '-');
        }
        out << '\n';
      }
    }
    for (const auto* r : block) {
      for (const auto& [covered, count] : r->brute.unexpected) {
        out << "  * " << to_string(r->strategy) << ": " << count << " window(s) cover " << covered
            << " features, outside the expected cases\n";
      }
    }
    out << '\n';
  }
  out << (report.all_agree() ? "closed form and brute force agree on every count\n"
                             : "MISMATCH between closed form and brute force (starred)\n");
  return out.str();
}

std::string format_csv(const BudgetReport& report) {
  std::ostringstream out;
  out << "m,n,strategy,features,formula,closed_form,brute_force,agree\n";
  for (const auto& r : report.rows) {
    auto line = [&](const std::string& features, const char* formula, std::int64_t closed,
                    std::int64_t brute) {
      out << csv::join({std::to_string(r.dims.rows), std::to_string(r.dims.cols),
                        to_string(r.strategy), features, formula, std::to_string(closed),
                        std::to_string(brute), closed == brute ? "true" : "false"})
          << '\n';
    };
    for (int key : kCoverageKeys) {
      line(std::to_string(key), budget_formula(r.strategy, key), r.closed.count(key),
           r.brute.count(key));
    }
    for (const auto& [covered, count] : r.brute.unexpected) {
      line(std::to_string(covered), "N/A", 0, count);
    }
    line("all", budget_formula(r.strategy, 0), r.closed.total, r.brute.total);
  }
  return out.str();
}

}  // namespace vfp
