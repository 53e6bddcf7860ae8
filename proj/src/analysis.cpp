#include "pebblekit/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <memory>
#include <thread>

namespace pebblekit {

const char* search_status_name(SearchStatus s) {
  switch (s) {
    case SearchStatus::kFound: return "found";
    case SearchStatus::kNoneWithinBound: return "none_within_bound";
    case SearchStatus::kBudgetExhausted: return "budget_exhausted";
  }
  return "?";
}

namespace {

template <class F>
void parallel_for(std::size_t n, int jobs, F&& f) {
  if (jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  const auto workers = std::min<std::size_t>(static_cast<std::size_t>(jobs), n);
  for (std::size_t t = 0; t < workers; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) f(i);
    });
  for (auto& th : pool) th.join();
}

std::size_t batch_size(int jobs) { return jobs <= 1 ? 1 : 256 * static_cast<std::size_t>(jobs); }

using Runner = std::function<FixpointResult(const DataWord&, std::size_t)>;

EmptinessResult search(const Alphabet& sigma, std::size_t max_len, std::size_t budget, int jobs,
                       const Runner& run) {
  EmptinessResult out;
  std::vector<DataWord> batch;
  bool done = false;

  auto flush = [&] {
    const std::size_t remaining = budget - out.expansions;
    std::vector<FixpointResult> res(batch.size());
    parallel_for(batch.size(), jobs, [&](std::size_t i) { res[i] = run(batch[i], remaining); });
    for (std::size_t i = 0; i < batch.size(); ++i) {
      const std::size_t left = budget - out.expansions;
      FixpointResult r = res[i];
      if (r.status == FixpointStatus::kBudgetExhausted || r.expansions >= left) r = run(batch[i], left);
      if (r.status == FixpointStatus::kBudgetExhausted) {
        out.status = SearchStatus::kBudgetExhausted;
        done = true;
        break;
      }
      out.expansions += r.expansions;
      ++out.words;
      if (r.status == FixpointStatus::kAccepted) {
        out.status = SearchStatus::kFound;
        out.witness = batch[i];
        done = true;
        break;
      }
    }
    batch.clear();
  };

  const std::size_t size = batch_size(jobs);
  for_each_canonical(sigma, max_len, [&](const DataWord& w) {
    batch.push_back(w);
    if (batch.size() >= size) flush();
    return !done;
  });
  if (!done && !batch.empty()) flush();
  return out;
}

}  // namespace

EmptinessResult bounded_emptiness(const WeakPA& a, std::size_t max_len, std::size_t budget, int jobs) {
  PAEvaluator ev(a);
  return search(a.alphabet, max_len, budget, jobs, [&ev](const DataWord& w, std::size_t b) { return ev.run(w, b); });
}

EmptinessResult bounded_emptiness(const AlternatingRA& a, std::size_t max_len, std::size_t budget, int jobs) {
  RAEvaluator ev(a);
  return search(a.alphabet, max_len, budget, jobs, [&ev](const DataWord& w, std::size_t b) { return ev.run(w, b); });
}

WordPredicate acceptor(const WeakPA& a) {
  auto ev = std::make_shared<PAEvaluator>(a);
  return [ev](const DataWord& w) { return ev->accepts(w); };
}

WordPredicate acceptor(const AlternatingRA& a) {
  auto ev = std::make_shared<RAEvaluator>(a);
  return [ev](const DataWord& w) { return ev->accepts(w); };
}

EquivResult bounded_equiv(const WordPredicate& a, const WordPredicate& b, const Alphabet& sigma,
                          std::size_t max_len, int jobs) {
  EquivResult out;
  std::vector<DataWord> batch;
  bool done = false;
  auto flush = [&] {
    std::vector<char> va(batch.size()), vb(batch.size());
    parallel_for(batch.size(), jobs, [&](std::size_t i) {
      va[i] = a(batch[i]);
      vb[i] = b(batch[i]);
    });
    for (std::size_t i = 0; i < batch.size(); ++i) {
      ++out.words;
      if (va[i] != vb[i]) {
        out.counterexample = batch[i];
        out.left = va[i];
        out.right = vb[i];
        done = true;
        break;
      }
    }
    batch.clear();
  };
  const std::size_t size = batch_size(jobs);
  for_each_canonical(sigma, max_len, [&](const DataWord& w) {
    batch.push_back(w);
    if (batch.size() >= size) flush();
    return !done;
  });
  if (!done && !batch.empty()) flush();
  return out;
}

std::optional<std::vector<std::string>> solve_labelling(const WeakPA& a, const std::vector<DataValue>& data) {
  PAEvaluator ev(a);
  const std::size_t n = data.size();
  const std::size_t m = a.alphabet.size();
  std::vector<std::size_t> pick(n, 0);
  while (true) {
    DataWord w(a.alphabet);
    for (std::size_t i = 0; i < n; ++i) w.push_back(a.alphabet[pick[i]], data[i]);
    if (ev.accepts(w)) {
      std::vector<std::string> labels;
      for (auto p : pick) labels.push_back(a.alphabet[p]);
      return labels;
    }
    std::size_t i = n;
    while (i > 0 && ++pick[i - 1] == m) pick[--i] = 0;
    if (i == 0) return std::nullopt;
  }
}

std::optional<std::vector<DataValue>> solve_data_membership(const WeakPA& a,
                                                            const std::vector<std::string>& labels) {
  for (const auto& l : labels) label_index(a.alphabet, l);
  PAEvaluator ev(a);
  std::optional<std::vector<DataValue>> found;
  for_each_restricted_growth(labels.size(), [&](const std::vector<DataValue>& d) {
    DataWord w(a.alphabet);
    for (std::size_t i = 0; i < d.size(); ++i) w.push_back(labels[i], d[i]);
    if (!ev.accepts(w)) return true;
    found = d;
    return false;
  });
  return found;
}

}  // namespace pebblekit
