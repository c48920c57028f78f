#include "ipbd/generate.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "ipbd/arithmetic.hpp"
#include "ipbd/catalog.hpp"
#include "ipbd/verify.hpp"

namespace ipbd {

namespace {

bool tabulated_order(int q) {
  return q == 4 || q == 8 || q == 9 || q == 16 || q == 25 || q == 27;
}

std::string order_error(int q) {
  return "order " + std::to_string(q) + " is neither prime nor a tabulated prime power";
}

Design finish(Design d, const std::string& what) {
  d = normalize(d);
  d.provenance = what;
  require_valid(d, what);
  return d;
}

}  // namespace

int mols_available(int q) {
  if (q >= 2 && (is_prime(q) || tabulated_order(q))) return q - 1;
  return 0;
}

LatinSquareSet mols(int q, int t) {
  if (mols_available(q) == 0) throw PreconditionError(order_error(q));
  if (t < 0 || t > q - 1) {
    throw PreconditionError("at most " + std::to_string(q - 1) + " MOLS of order " +
                            std::to_string(q) + " are available");
  }
  LatinSquareSet set;
  set.n = q;
  if (is_prime(q)) {
    for (int a = 1; a <= t; ++a) {
      std::vector<int> sq(static_cast<std::size_t>(q) * q);
      for (int i = 0; i < q; ++i) {
        for (int j = 0; j < q; ++j) sq[static_cast<std::size_t>(i) * q + j] = (a * i + j) % q;
      }
      set.squares.push_back(std::move(sq));
    }
  } else {
    auto doc = catalog::tabulated("mols-" + std::to_string(q));
    const auto& table = std::get<LatinSquareSet>(doc);
    set.squares.assign(table.squares.begin(), table.squares.begin() + t);
  }
  require_valid(set, "MOLS of order " + std::to_string(q));
  return set;
}

LatinSquareSet idempotent_mols(int q, int t) {
  if (t < 0 || t > q - 2) {
    throw PreconditionError("idempotent MOLS of order " + std::to_string(q) + " need t <= " +
                            std::to_string(q - 2));
  }
  LatinSquareSet base = mols(q, t + 1);
  // Cells holding symbol 0 in the first square form a common transversal
  // of the others; send them to the diagonal.
  std::vector<int> col_of_row(static_cast<std::size_t>(q));
  for (int r = 0; r < q; ++r) {
    for (int c = 0; c < q; ++c) {
      if (base.at(0, r, c) == 0) col_of_row[r] = c;
    }
  }
  LatinSquareSet out;
  out.n = q;
  for (std::size_t s = 1; s < base.count(); ++s) {
    std::vector<int> relabel(static_cast<std::size_t>(q));
    for (int r = 0; r < q; ++r) relabel[base.at(s, r, col_of_row[r])] = r;
    std::vector<int> sq(static_cast<std::size_t>(q) * q);
    for (int r = 0; r < q; ++r) {
      for (int j = 0; j < q; ++j) {
        sq[static_cast<std::size_t>(r) * q + j] = relabel[base.at(s, r, col_of_row[j])];
      }
    }
    out.squares.push_back(std::move(sq));
  }
  require_valid(out, "idempotent MOLS of order " + std::to_string(q));
  for (std::size_t s = 0; s < out.count(); ++s) {
    if (!is_idempotent(out, s)) throw CertificationError("idempotent MOLS lost idempotency");
  }
  return out;
}

Design transversal_design(int k, int q) {
  if (k < 2 || q < 1) throw PreconditionError("TD(k, q) needs k >= 2 and q >= 1");
  if (k <= 3 && mols_available(q) == 0) {
    // A cyclic latin square serves every order.
    Design d;
    d.n_points = k * q;
    d.kind = td_layout(k, q);
    d.block_sizes = BlockSizeSet::from({k});
    for (int r = 0; r < q; ++r) {
      for (int c = 0; c < q; ++c) {
        Block b{r, q + c};
        if (k == 3) b.push_back(2 * q + (r + c) % q);
        d.blocks.push_back(std::move(b));
      }
    }
    return finish(std::move(d), "TD(" + std::to_string(k) + "," + std::to_string(q) + ")");
  }
  if (k - 2 > mols_available(q)) {
    throw PreconditionError("TD(" + std::to_string(k) + "," + std::to_string(q) + ") needs " +
                            std::to_string(k - 2) + " MOLS of order " + std::to_string(q));
  }
  LatinSquareSet sq = mols(q, k - 2);
  Design d;
  d.n_points = k * q;
  d.kind = td_layout(k, q);
  d.block_sizes = BlockSizeSet::from({k});
  for (int r = 0; r < q; ++r) {
    for (int c = 0; c < q; ++c) {
      Block b{r, q + c};
      for (std::size_t s = 0; s < sq.count(); ++s) {
        b.push_back(static_cast<int>(s + 2) * q + sq.at(s, r, c));
      }
      d.blocks.push_back(std::move(b));
    }
  }
  return finish(std::move(d), "TD(" + std::to_string(k) + "," + std::to_string(q) + ")");
}

Design resolvable_transversal_design(int k, int q) {
  if (k < 2 || k > q) throw PreconditionError("resolvable TD(k, q) needs 2 <= k <= q");
  if (k - 1 > mols_available(q)) throw PreconditionError(order_error(q));
  LatinSquareSet sq = mols(q, k - 1);
  Design d;
  d.n_points = k * q;
  d.kind = td_layout(k, q);
  d.block_sizes = BlockSizeSet::from({k});
  Resolution res;
  res.classes.resize(static_cast<std::size_t>(q));
  for (int r = 0; r < q; ++r) {
    for (int c = 0; c < q; ++c) {
      Block b{r, q + c};
      for (int s = 0; s + 2 < k; ++s) b.push_back((s + 2) * q + sq.at(s, r, c));
      res.classes[sq.at(k - 2, r, c)].blocks.push_back(d.blocks.size());
      d.blocks.push_back(std::move(b));
    }
  }
  d.resolution = std::move(res);
  return finish(std::move(d),
                "resolvable TD(" + std::to_string(k) + "," + std::to_string(q) + ")");
}

namespace {

// Parallel classes of AG(2, q) as lists of lines.
std::vector<std::vector<Block>> affine_classes(int q) {
  LatinSquareSet sq = mols(q, q - 1);
  std::vector<std::vector<Block>> classes(static_cast<std::size_t>(q) + 1,
                                          std::vector<Block>(static_cast<std::size_t>(q)));
  for (int r = 0; r < q; ++r) {
    for (int c = 0; c < q; ++c) {
      const Point p = r * q + c;
      classes[0][r].push_back(p);
      classes[1][c].push_back(p);
      for (std::size_t s = 0; s < sq.count(); ++s) classes[s + 2][sq.at(s, r, c)].push_back(p);
    }
  }
  return classes;
}

}  // namespace

Design affine_plane(int q) {
  if (mols_available(q) == 0) throw PreconditionError(order_error(q));
  Design d;
  d.n_points = q * q;
  d.block_sizes = BlockSizeSet::from({q});
  Resolution res;
  for (auto& cls : affine_classes(q)) {
    ParallelClass pc;
    for (auto& line : cls) {
      pc.blocks.push_back(d.blocks.size());
      std::sort(line.begin(), line.end());
      d.blocks.push_back(std::move(line));
    }
    res.classes.push_back(std::move(pc));
  }
  d.resolution = std::move(res);
  return finish(std::move(d), "affine plane of order " + std::to_string(q));
}

Design projective_plane(int q) {
  if (mols_available(q) == 0) throw PreconditionError(order_error(q));
  Design d;
  d.n_points = q * q + q + 1;
  d.block_sizes = BlockSizeSet::from({q + 1});
  Block infinity;
  int c = 0;
  for (auto& cls : affine_classes(q)) {
    const Point ideal = q * q + c++;
    infinity.push_back(ideal);
    for (auto& line : cls) {
      line.push_back(ideal);
      std::sort(line.begin(), line.end());
      d.blocks.push_back(std::move(line));
    }
  }
  d.blocks.push_back(std::move(infinity));
  return finish(std::move(d), "projective plane of order " + std::to_string(q));
}

Design one_factorization(int n) {
  if (n < 2 || n % 2 != 0) throw PreconditionError("a 1-factorization of K_n needs even n >= 2");
  Design d;
  d.n_points = n;
  d.block_sizes = BlockSizeSet::from({2});
  Resolution res;
  const int m = n - 1;
  // Class r pairs infinity with r and i with j whenever i + j = 2r mod m.
  for (int r = 0; r < m; ++r) {
    ParallelClass pc;
    pc.blocks.push_back(d.blocks.size());
    d.blocks.push_back({r, m});
    for (int i = 0; i < m; ++i) {
      const int j = ((2 * r - i) % m + m) % m;
      if (i < j) {
        pc.blocks.push_back(d.blocks.size());
        d.blocks.push_back({i, j});
      }
    }
    res.classes.push_back(std::move(pc));
  }
  d.resolution = std::move(res);
  return finish(std::move(d), "1-factorization of K_" + std::to_string(n));
}

Design steiner_triple(int v) {
  if (v < 1 || (v % 6 != 1 && v % 6 != 3)) {
    throw PreconditionError("STS(" + std::to_string(v) + ") needs v = 1 or 3 mod 6");
  }
  Design d;
  d.n_points = v;
  d.block_sizes = BlockSizeSet::from({3});
  std::string how;
  if (v % 6 == 3) {
    // Bose: idempotent commutative quasigroup x o y = (n+1)(x+y) on Z_{2n+1}.
    const int n = (v - 3) / 6, m = 2 * n + 1;
    auto pt = [m](int x, int i) { return (i % 3) * m + x; };
    for (int x = 0; x < m; ++x) d.blocks.push_back({pt(x, 0), pt(x, 1), pt(x, 2)});
    for (int i = 0; i < 3; ++i) {
      for (int x = 0; x < m; ++x) {
        for (int y = x + 1; y < m; ++y) {
          d.blocks.push_back({pt(x, i), pt(y, i), pt((n + 1) * (x + y) % m, i + 1)});
        }
      }
    }
    how = "Bose";
  } else if (v > 1) {
    // Skolem: half-idempotent commutative quasigroup on Z_{2n}.
    const int n = (v - 1) / 6, m = 2 * n;
    auto pt = [m](int x, int i) { return (i % 3) * m + x; };
    auto op = [n, m](int x, int y) {
      const int s = (x + y) % m;
      return s % 2 == 0 ? s / 2 : n + s / 2;
    };
    const Point inf = v - 1;
    for (int x = 0; x < n; ++x) d.blocks.push_back({pt(x, 0), pt(x, 1), pt(x, 2)});
    for (int i = 0; i < 3; ++i) {
      for (int x = 0; x < n; ++x) d.blocks.push_back({inf, pt(x + n, i), pt(x, i + 1)});
      for (int x = 0; x < m; ++x) {
        for (int y = x + 1; y < m; ++y) d.blocks.push_back({pt(x, i), pt(y, i), pt(op(x, y), i + 1)});
      }
    }
    how = "Skolem";
  } else {
    how = "trivial";
  }
  for (auto& b : d.blocks) std::sort(b.begin(), b.end());
  return finish(std::move(d), "STS(" + std::to_string(v) + ") " + how);
}

}  // namespace ipbd
