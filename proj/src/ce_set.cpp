#include "infex/ce_set.hpp"

#include <algorithm>
#include <map>

#include "infex/error.hpp"

namespace infex {

struct CeSetApprox::Impl {
  std::function<bool(std::size_t, std::size_t)> contains;
  EnumFn enumerate;
  std::optional<std::vector<std::size_t>> limit;
  std::string description;
  Json json;
};

std::string set_literal(const std::vector<std::size_t>& elements) {
  std::string s = "{";
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(elements[i]);
  }
  return s + "}";
}

namespace {

std::vector<std::size_t> sorted_unique(std::vector<std::size_t> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

bool is_prime(std::size_t n) {
  if (n < 2) return false;
  for (std::size_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

}  // namespace

CeSetApprox CeSetApprox::frozen(std::vector<std::size_t> elements) {
  auto els = sorted_unique(std::move(elements));
  auto impl = std::make_shared<Impl>();
  impl->contains = [els](std::size_t e, std::size_t) { return std::binary_search(els.begin(), els.end(), e); };
  impl->enumerate = [els](std::size_t) { return els; };
  impl->limit = els;
  impl->description = set_literal(els);
  impl->json = Json{{"kind", "frozen"}, {"elements", els}};
  return CeSetApprox(std::move(impl));
}

CeSetApprox CeSetApprox::staged(std::vector<std::pair<std::size_t, std::size_t>> pairs) {
  std::map<std::size_t, std::size_t> first;
  for (auto [stage, e] : pairs) {
    auto [it, fresh] = first.emplace(e, stage);
    if (!fresh) it->second = std::min(it->second, stage);
  }
  std::vector<std::size_t> lim;
  Json jp = Json::array();
  for (auto [e, stage] : first) {
    lim.push_back(e);
    jp.push_back({stage, e});
  }
  auto impl = std::make_shared<Impl>();
  impl->contains = [first](std::size_t e, std::size_t s) {
    auto it = first.find(e);
    return it != first.end() && it->second <= s;
  };
  impl->enumerate = [first](std::size_t s) {
    std::vector<std::size_t> out;
    for (auto [e, stage] : first) {
      if (stage <= s) out.push_back(e);
    }
    return out;
  };
  impl->description = "staged" + set_literal(lim);
  impl->limit = std::move(lim);
  impl->json = Json{{"kind", "staged"}, {"pairs", std::move(jp)}};
  return CeSetApprox(std::move(impl));
}

CeSetApprox CeSetApprox::primes() {
  auto impl = std::make_shared<Impl>();
  impl->contains = [](std::size_t e, std::size_t s) { return e <= s && is_prime(e); };
  impl->enumerate = [](std::size_t s) {
    std::vector<std::size_t> out;
    for (std::size_t e = 2; e <= s; ++e) {
      if (is_prime(e)) out.push_back(e);
    }
    return out;
  };
  impl->description = "primes";
  impl->json = Json{{"kind", "primes"}};
  return CeSetApprox(std::move(impl));
}

CeSetApprox CeSetApprox::from_function(EnumFn enum_at, std::optional<std::vector<std::size_t>> limit,
                                       std::string description) {
  if (!enum_at) throw Error("enumeration function is empty");
  auto impl = std::make_shared<Impl>();
  impl->enumerate = [f = std::move(enum_at)](std::size_t s) { return sorted_unique(f(s)); };
  impl->contains = [f = impl->enumerate](std::size_t e, std::size_t s) {
    auto v = f(s);
    return std::binary_search(v.begin(), v.end(), e);
  };
  if (limit) limit = sorted_unique(std::move(*limit));
  impl->limit = std::move(limit);
  impl->description = std::move(description);
  return CeSetApprox(std::move(impl));
}

std::vector<std::size_t> CeSetApprox::enum_at(std::size_t stage) const { return impl_->enumerate(stage); }

bool CeSetApprox::contains(std::size_t element, std::size_t stage) const { return impl_->contains(element, stage); }

std::optional<std::size_t> CeSetApprox::first_stage(std::size_t element, std::size_t max_stage) const {
  if (!contains(element, max_stage)) return std::nullopt;
  std::size_t lo = 0, hi = max_stage;
  while (lo < hi) {
    std::size_t mid = lo + (hi - lo) / 2;
    if (contains(element, mid)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

const std::optional<std::vector<std::size_t>>& CeSetApprox::limit() const { return impl_->limit; }

std::string CeSetApprox::describe() const { return impl_->description; }

Json CeSetApprox::to_json() const {
  if (impl_->json.is_null()) throw Error("set '" + impl_->description + "' has no JSON form");
  return impl_->json;
}

CeSetApprox CeSetApprox::from_json(const Json& j) {
  try {
    if (j.is_string()) return parse_literal(j.get<std::string>());
    if (j.is_array()) return frozen(j.get<std::vector<std::size_t>>());
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "frozen") return frozen(j.at("elements").get<std::vector<std::size_t>>());
    if (kind == "staged") {
      std::vector<std::pair<std::size_t, std::size_t>> pairs;
      for (const auto& p : j.at("pairs")) {
        if (!p.is_array() || p.size() != 2) throw ParseError("staged pairs must be [stage, element]", 0, 0);
        pairs.emplace_back(p[0].get<std::size_t>(), p[1].get<std::size_t>());
      }
      return staged(std::move(pairs));
    }
    if (kind == "primes") return primes();
    throw ParseError("unknown set kind '" + kind + "'", 0, 0);
  } catch (const Json::exception& e) {
    throw ParseError(std::string("bad set description: ") + e.what(), 0, 0);
  }
}

CeSetApprox CeSetApprox::parse_literal(const std::string& text) {
  if (text == "primes") return primes();
  if (text.size() < 2 || text.front() != '{' || text.back() != '}') {
    throw ParseError("set literal must look like {0,2,3}: '" + text + "'", 0, 0);
  }
  std::vector<std::size_t> els;
  std::string cur;
  for (std::size_t i = 1; i + 1 < text.size(); ++i) {
    char ch = text[i];
    if (ch == ',') {
      if (cur.empty()) throw ParseError("empty element in set literal '" + text + "'", 0, i);
      els.push_back(std::stoull(cur));
      cur.clear();
    } else if (ch >= '0' && ch <= '9') {
      cur += ch;
    } else if (ch != ' ') {
      throw ParseError("unexpected character in set literal '" + text + "'", 0, i);
    }
  }
  if (!cur.empty()) els.push_back(std::stoull(cur));
  return frozen(std::move(els));
}

CeSetApprox family_I(const CeSetApprox& e, std::size_t x) {
  auto impl = std::make_shared<CeSetApprox::Impl>();
  auto base = e.impl_;
  impl->contains = [base, x](std::size_t el, std::size_t s) { return el == x || base->contains(el, s); };
  impl->enumerate = [base, x](std::size_t s) {
    auto v = base->enumerate(s);
    if (!std::binary_search(v.begin(), v.end(), x)) v.insert(std::upper_bound(v.begin(), v.end(), x), x);
    return v;
  };
  if (base->limit) {
    auto l = *base->limit;
    l.push_back(x);
    impl->limit = sorted_unique(std::move(l));
  }
  impl->description = base->description + "+" + std::to_string(x);
  const Json& bj = base->json;
  if (!bj.is_null()) {
    if (bj.at("kind") == "frozen") {
      auto els = bj.at("elements").get<std::vector<std::size_t>>();
      els.push_back(x);
      impl->json = Json{{"kind", "frozen"}, {"elements", sorted_unique(els)}};
    } else if (bj.at("kind") == "staged") {
      Json pairs = bj.at("pairs");
      pairs.push_back({0, x});
      impl->json = Json{{"kind", "staged"}, {"pairs", pairs}};
    }
  }
  return CeSetApprox(std::move(impl));
}

}  // namespace infex
