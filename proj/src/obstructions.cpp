#include "cayleysaw/obstructions.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <thread>

#include "cayleysaw/cayley.hpp"
#include "cayleysaw/errors.hpp"

namespace cayleysaw {

namespace {

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  unsigned __int128 r = 1 % m, x = b % m;
  while (e) {
    if (e & 1) r = r * x % m;
    x = x * x % m;
    e >>= 1;
  }
  return static_cast<std::uint64_t>(r);
}

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> f;
  for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p) continue;
    unsigned k = 0;
    while (n % p == 0) {
      n /= p;
      ++k;
    }
    f.emplace_back(p, k);
  }
  if (n > 1) f.emplace_back(n, 1);
  return f;
}

}  // namespace

std::uint64_t least_prime_factor(std::uint64_t n) {
  if (n < 2) throw ValidationError("least prime factor needs n >= 2");
  return factorize(n).front().first;
}

std::uint64_t multiplicative_order(std::uint64_t base, std::uint64_t m) {
  if (m < 2) throw ValidationError("modulus must be at least 2");
  if (std::gcd(base, m) != 1) return 0;
  std::uint64_t phi = m;
  for (auto [p, k] : factorize(m)) phi = phi / p * (p - 1);
  std::uint64_t r = phi;
  for (auto [q, k] : factorize(phi))
    while (r % q == 0 && pow_mod(base, r / q, m) == 1) r /= q;
  return r;
}

TorsionReport torsion_obstruction(const OraclePtr& o, unsigned depth, std::uint64_t order_cap) {
  if (!o) throw ValidationError("torsion check needs a group with a word-problem oracle");
  if (order_cap == 0) throw ValidationError("order cap must be positive");
  TorsionReport rep;
  rep.depth = depth;
  rep.order_cap = order_cap;
  rep.all_powers_of_two = true;
  const Ball b = Ball::build(o, depth);
  const Presentation& p = o->presentation();
  for (Vertex v = 0; v < b.size(); ++v) {
    const GenWord w = b.word(v);
    const auto ord = element_order(*o, w, order_cap);
    ++rep.elements_checked;
    if (!ord) {
      rep.inconclusive_word = w.empty() ? std::string("1") : to_string(w, p);
      break;
    }
    rep.max_order = std::max(rep.max_order, *ord);
    if ((*ord & (*ord - 1)) != 0) rep.all_powers_of_two = false;
  }
  rep.all_finite = !rep.inconclusive_word;
  if (!rep.all_finite) rep.all_powers_of_two = false;
  rep.status = rep.all_finite ? "evidence" : "inconclusive";
  if (rep.all_finite)
    rep.argument = "each checked g has g^n = 1 with n >= 1, so any homomorphism h to Z gives "
                   "n h(g) = h(1) = 0 and h(g) = 0";
  else
    rep.argument = "order of " + *rep.inconclusive_word + " exceeds the cap " +
                   std::to_string(order_cap);
  return rep;
}

HigmanSearch higman_quotient_search(std::uint64_t bound, unsigned workers) {
  if (bound < 2) throw ValidationError("search bound must be at least 2");
  if (workers == 0) throw ValidationError("workers must be positive");
  HigmanSearch out;
  out.bound = bound;
  const std::size_t B = bound;

  // y | 2^x - 1 iff y is odd and ord_y(2) | x.
  std::vector<std::uint64_t> ord(B + 1, 0);
  for (std::uint64_t y = 3; y <= B; y += 2) ord[y] = multiplicative_order(2, y);
  std::vector<std::vector<std::uint32_t>> succ(B + 1);
  std::vector<std::uint32_t> indeg(B + 1, 0);
  for (std::uint64_t y = 3; y <= B; y += 2)
    for (std::uint64_t x = ord[y]; x <= B; x += ord[y]) {
      if (x < 2) continue;
      succ[x].push_back(static_cast<std::uint32_t>(y));
      ++indeg[y];
      ++out.chain_edges;
    }

  // Descent audit along every edge x -> y: p = lpf(y) divides 2^x - 1, so
  // r = ord_p(2) divides x and p - 1, and q = lpf(r) < p divides x.
  std::vector<std::uint32_t> lpf(B + 1, 0);
  for (std::uint64_t i = 2; i <= B; ++i)
    if (!lpf[i])
      for (std::uint64_t j = i; j <= B; j += i)
        if (!lpf[j]) lpf[j] = static_cast<std::uint32_t>(i);
  out.edges_descend = true;
  for (std::uint64_t x = 2; x <= B; ++x)
    for (std::uint32_t y : succ[x]) {
      const std::uint64_t p = lpf[y], r = ord[p], q = lpf[r];
      ++out.edges_audited;
      if (!((p - 1) % r == 0 && x % r == 0 && x % q == 0 && q < p && lpf[x] <= q))
        out.edges_descend = false;
    }
  out.audit_descends = true;
  for (std::uint64_t p = 3; p <= B; p += 2) {
    if (lpf[p] != p) continue;
    PrimeDescent d;
    d.p = p;
    d.r = ord[p];
    d.q = d.r >= 2 ? lpf[d.r] : 0;
    d.r_divides_p_minus_1 = (p - 1) % d.r == 0;
    d.descends = d.r >= 2 && d.q < p && d.r_divides_p_minus_1;
    out.audit_descends = out.audit_descends && d.descends;
    out.audit.push_back(d);
  }

  // Keep only vertices that can sit on a closed chain.
  std::vector<std::uint8_t> alive(B + 1, 0);
  std::vector<std::uint32_t> outdeg(B + 1, 0);
  for (std::uint64_t x = 2; x <= B; ++x) {
    alive[x] = 1;
    outdeg[x] = static_cast<std::uint32_t>(succ[x].size());
  }
  std::vector<std::vector<std::uint32_t>> pred(B + 1);
  for (std::uint64_t x = 2; x <= B; ++x)
    for (std::uint32_t y : succ[x]) pred[y].push_back(static_cast<std::uint32_t>(x));
  std::vector<std::uint32_t> queue;
  for (std::uint64_t x = 2; x <= B; ++x)
    if (outdeg[x] == 0 || indeg[x] == 0) {
      alive[x] = 0;
      queue.push_back(static_cast<std::uint32_t>(x));
    }
  while (!queue.empty()) {
    const std::uint32_t v = queue.back();
    queue.pop_back();
    for (std::uint32_t y : succ[v])
      if (alive[y] && --indeg[y] == 0) {
        alive[y] = 0;
        queue.push_back(y);
      }
    for (std::uint32_t x : pred[v])
      if (alive[x] && --outdeg[x] == 0) {
        alive[x] = 0;
        queue.push_back(x);
      }
  }

  std::atomic<std::uint64_t> next{2}, explored{0};
  std::vector<std::vector<OrderTuple>> found(workers);
  auto worker = [&](unsigned id) {
    std::uint64_t local = 0;
    for (std::uint64_t a = next++; a <= B; a = next++) {
      if (!alive[a]) continue;
      for (std::uint32_t b : succ[a]) {
        if (!alive[b]) continue;
        for (std::uint32_t c : succ[b]) {
          if (!alive[c]) continue;
          for (std::uint32_t d : succ[c]) {
            if (!alive[d]) continue;
            ++local;
            if (ord[a] != 0 && d % ord[a] == 0) found[id].push_back({a, b, c, d});
          }
        }
      }
    }
    explored += local;
  };
  if (workers == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker, w);
    for (auto& t : pool) t.join();
  }
  for (auto& f : found) out.solutions.insert(out.solutions.end(), f.begin(), f.end());
  std::sort(out.solutions.begin(), out.solutions.end());
  out.chains_explored = explored;
  return out;
}

InvolutionObstruction involution_ghf_obstruction(const Presentation& p) {
  InvolutionObstruction out;
  for (const Generator& g : p.generators) out.generators.push_back(g.name);
  out.applicable = p.rank() > 0 && p.all_involutions();
  if (out.applicable)
    out.argument = "every generator s satisfies s^2 = 1, so h(s^2) = 2 h(s) = 0 and h vanishes "
                   "on all generators: no group height function";
  else
    out.argument = "not applicable: some generator is not an involution";
  return out;
}

}  // namespace cayleysaw
