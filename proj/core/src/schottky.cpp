#include "berkline/schottky.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

#include "berkline/errors.hpp"

namespace berkline::group {

SchottkyGroup::SchottkyGroup(PrimeContext ctx, std::vector<MoebiusMap> generators,
                             std::optional<std::vector<PingPongDisks>> disks, std::size_t max_word_length)
    : ctx_(ctx), gens_(std::move(generators)), disks_(std::move(disks)), max_len_(max_word_length) {
  if (gens_.size() > 26) throw ParseError("at most 26 generators are supported");
  if (disks_ && disks_->size() != gens_.size())
    throw DimensionMismatch("one pair of ping-pong disks per generator is required");
  if (max_len_ > kMaxWordLength) throw TooManyWords("word length cap exceeds " + std::to_string(kMaxWordLength));
  for (const auto& g : gens_) {
    letters_.push_back(g);
    letters_.push_back(g.inverse());
  }
}

MoebiusMap SchottkyGroup::word_matrix(const GroupWord& w) const {
  MoebiusMap m = MoebiusMap::identity();
  for (auto k : w) {
    if (k >= letters_.size()) throw UnknownLetter("group letter " + std::to_string(k));
    m = m * letters_[k];
  }
  return m;
}

GroupWord inverse_word(const GroupWord& w) {
  GroupWord r(w.rbegin(), w.rend());
  for (auto& k : r) k = inverse_letter(k);
  return r;
}

GroupWord reduce_product(const GroupWord& x, const GroupWord& y) {
  GroupWord r = x;
  for (auto k : y) {
    if (!r.empty() && r.back() == inverse_letter(k))
      r.pop_back();
    else
      r.push_back(k);
  }
  return r;
}

std::string word_to_string(const GroupWord& w) {
  if (w.empty()) return "e";
  std::string s;
  for (auto k : w) s += static_cast<char>(((k & 1u) ? 'A' : 'a') + k / 2);
  return s;
}

GroupWord parse_group_word(const std::string& s, std::size_t rank) {
  GroupWord w;
  if (s == "e") return w;
  for (char ch : s) {
    std::uint8_t k;
    if (ch >= 'a' && ch <= 'z')
      k = static_cast<std::uint8_t>(2 * (ch - 'a'));
    else if (ch >= 'A' && ch <= 'Z')
      k = static_cast<std::uint8_t>(2 * (ch - 'A') + 1);
    else
      throw ParseError("bad group word '" + s + "'");
    if (k / 2u >= rank) throw ParseError("group word '" + s + "' uses an unknown generator");
    w = reduce_product(w, GroupWord{k});
  }
  return w;
}

bool in_open_disk(const PrimeContext& ctx, const BerkPoint& boundary, const BerkPoint& x) {
  if (!line::leq(ctx, x, boundary) || line::same_point(ctx, x, boundary)) return false;
  BerkPoint j = line::join(ctx, x, BerkPoint::classical(boundary.center()));
  return !line::same_point(ctx, j, boundary);
}

PingPongReport check_ping_pong(const SchottkyGroup& g) {
  PingPongReport rep;
  if (!g.disks()) return rep;
  const auto& ctx = g.ctx();
  const auto& disks = *g.disks();
  auto fail = [&](std::string why) {
    if (rep.ok) {
      rep.ok = false;
      rep.failure = std::move(why);
    }
  };
  std::vector<BerkPoint> all;
  for (const auto& d : disks) {
    all.push_back(d.attracting);
    all.push_back(d.repelling);
  }
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      if (in_open_disk(ctx, all[i], BerkPoint::classical(all[j].center())) ||
          in_open_disk(ctx, all[j], BerkPoint::classical(all[i].center())))
        fail("disks " + std::to_string(i) + " and " + std::to_string(j) + " overlap");
    }
  for (std::size_t i = 0; i < g.rank(); ++i) {
    for (int inv = 0; inv < 2; ++inv) {
      const MoebiusMap& m = g.letter(static_cast<std::uint8_t>(2 * i + inv));
      const BerkPoint& from = inv ? disks[i].attracting : disks[i].repelling;
      const BerkPoint& into = inv ? disks[i].repelling : disks[i].attracting;
      std::string name = word_to_string(GroupWord{static_cast<std::uint8_t>(2 * i + inv)});
      P1Point at_inf = m.apply(std::nullopt);
      if (!at_inf) {
        fail(name + " fixes infinity");
        continue;
      }
      BerkPoint edge = act_on_point(ctx, m, from);
      if (!line::leq(ctx, BerkPoint::classical(*at_inf), edge))
        fail(name + " sends the outside of its disk upward");
      else if (!in_open_disk(ctx, into, edge))
        fail(name + " misses its target disk");
    }
  }
  return rep;
}

namespace {

std::size_t word_count(std::size_t letters, std::size_t L) {
  std::size_t total = 1, shell = 1;
  for (std::size_t n = 1; n <= L; ++n) {
    shell = (n == 1) ? letters : shell * (letters - 1);
    total += shell;
    if (total > kMaxOrbitWords) return total;
  }
  return total;
}

void expand(const SchottkyGroup& g, const std::vector<OrbitEntry>& parents, std::size_t lo, std::size_t hi,
            std::vector<OrbitEntry>& out) {
  const BerkPoint gauss = BerkPoint::gauss();
  for (std::size_t i = lo; i < hi; ++i) {
    const OrbitEntry& u = parents[i];
    for (std::uint8_t k = 0; k < g.letters(); ++k) {
      if (!u.word.empty() && u.word.back() == inverse_letter(k)) continue;
      OrbitEntry e;
      e.word = u.word;
      e.word.push_back(k);
      e.matrix = u.matrix * g.letter(k);
      try {
        e.point = act_on_point(g.ctx(), e.matrix, gauss);
      } catch (const PoleInsideDisk& err) {
        throw PoleInsideDisk("word " + word_to_string(e.word) + ": " + err.what());
      }
      e.rho = line::big_metric(g.ctx(), gauss, e.point);
      out.push_back(std::move(e));
    }
  }
}

}  // namespace

std::vector<OrbitEntry> orbit_enumerate(const SchottkyGroup& g, std::size_t L, std::size_t threads) {
  if (L > g.max_word_length()) throw TooManyWords("L = " + std::to_string(L) + " exceeds the length cap");
  if (g.rank() > 0 && word_count(g.letters(), L) > kMaxOrbitWords)
    throw TooManyWords("more than " + std::to_string(kMaxOrbitWords) + " words at L = " + std::to_string(L));
  threads = std::max<std::size_t>(1, threads);
  std::vector<OrbitEntry> all;
  OrbitEntry root;
  root.point = BerkPoint::gauss();
  root.rho = 0;
  all.push_back(root);
  std::vector<OrbitEntry> level{root};
  for (std::size_t n = 1; n <= L && g.rank() > 0; ++n) {
    std::size_t chunks = std::min(threads, level.size());
    std::vector<std::vector<OrbitEntry>> parts(chunks);
    std::vector<std::exception_ptr> errors(chunks);
    auto run = [&](std::size_t c) {
      std::size_t lo = level.size() * c / chunks, hi = level.size() * (c + 1) / chunks;
      try {
        expand(g, level, lo, hi, parts[c]);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    };
    if (chunks == 1) {
      run(0);
    } else {
      std::vector<std::thread> pool;
      for (std::size_t c = 0; c < chunks; ++c) pool.emplace_back(run, c);
      for (auto& t : pool) t.join();
    }
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
    std::vector<OrbitEntry> next;
    for (auto& part : parts)
      for (auto& e : part) next.push_back(std::move(e));
    all.insert(all.end(), next.begin(), next.end());
    level = std::move(next);
  }
  return all;
}

CriticalExponent critical_exponent_estimate(const std::vector<OrbitEntry>& orbit) {
  CriticalExponent out;
  std::vector<Rational> rhos;
  for (const auto& e : orbit) rhos.push_back(e.rho);
  std::sort(rhos.begin(), rhos.end());
  for (std::size_t i = 0; i < rhos.size(); ++i) {
    if (out.r_grid.empty() || out.r_grid.back() != rhos[i]) {
      out.r_grid.push_back(rhos[i]);
      out.counts.push_back(0);
    }
    out.counts.back() = i + 1;
  }
  if (out.r_grid.size() < 4)
    throw InsufficientData(std::to_string(out.r_grid.size()) + " distinct R values, at least 4 needed");
  const double rmax = to_double(out.r_grid.back());
  while (to_double(out.r_grid[out.fit_start]) < rmax / 2) ++out.fit_start;
  std::size_t n = out.r_grid.size() - out.fit_start;
  if (n < 2) throw InsufficientData("fewer than 2 R values in the fit window");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = out.fit_start; i < out.r_grid.size(); ++i) {
    double x = to_double(out.r_grid[i]), y = std::log(static_cast<double>(out.counts[i]));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double denom = n * sxx - sx * sx;
  out.delta = (n * sxy - sx * sy) / denom;
  double intercept = (sy - out.delta * sx) / n;
  double ss = 0;
  for (std::size_t i = out.fit_start; i < out.r_grid.size(); ++i) {
    double r = std::log(static_cast<double>(out.counts[i])) - (intercept + out.delta * to_double(out.r_grid[i]));
    ss += r * r;
  }
  out.residual = std::sqrt(ss / n);
  return out;
}

CriticalExponent critical_exponent_estimate(const SchottkyGroup& g, std::size_t L, std::size_t threads) {
  if (g.rank() == 0) throw InsufficientData("the trivial group has a single orbit point");
  return critical_exponent_estimate(orbit_enumerate(g, L, threads));
}

PoincareResult poincare_series(const PrimeContext& ctx, const std::vector<OrbitEntry>& orbit, double s,
                               PoincareMode mode) {
  PoincareResult out;
  for (const auto& e : orbit) {
    if (e.word.empty()) continue;
    double x = mode == PoincareMode::Rho ? to_double(e.rho) : line::diam(e.point).to_double(ctx);
    if (out.shells.size() < e.word.size()) out.shells.resize(e.word.size(), 0.0);
    out.shells[e.word.size() - 1] += std::exp(-s * x);
  }
  for (double v : out.shells) out.partial += v;
  if (out.shells.size() == 1) out.tail = std::numeric_limits<double>::infinity();
  if (out.shells.size() >= 2) {
    double last = out.shells.back(), prev = out.shells[out.shells.size() - 2];
    double q = prev > 0 ? last / prev : std::numeric_limits<double>::infinity();
    out.tail = q < 1 ? last * q / (1 - q) : std::numeric_limits<double>::infinity();
  }
  return out;
}

PoincareResult poincare_series(const SchottkyGroup& g, double s, std::size_t L, PoincareMode mode,
                               std::size_t threads) {
  return poincare_series(g.ctx(), orbit_enumerate(g, L, threads), s, mode);
}

}  // namespace berkline::group
