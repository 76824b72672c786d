#include "netinf/tree_sim.hpp"

#include <cmath>
#include <fstream>
#include <queue>

#include "json.hpp"

namespace netinf {

bool TreeNetwork::has_edge(std::size_t i, std::size_t j) const {
  if (i == j) return false;
  if (i > j) std::swap(i, j);
  return j > 0 && parent[j] == i;
}

std::vector<std::vector<bool>> TreeNetwork::adjacency() const {
  std::vector<std::vector<bool>> adj(p, std::vector<bool>(p, false));
  for (std::size_t v = 1; v < p; ++v) {
    adj[v][parent[v]] = true;
    adj[parent[v]][v] = true;
  }
  return adj;
}

std::vector<std::size_t> TreeNetwork::depths() const {
  std::vector<std::size_t> d(p, 0);
  for (std::size_t v = 1; v < p; ++v) d[v] = d[parent[v]] + 1;
  return d;
}

void TreeNetwork::validate() const {
  if (p < 2) throw std::invalid_argument("TreeNetwork: p must be at least 2");
  if (parent.size() != p || coeff.size() != p)
    throw std::invalid_argument("TreeNetwork: parent/coeff size mismatch");
  for (std::size_t v = 1; v < p; ++v) {
    if (parent[v] >= v)
      throw std::invalid_argument("TreeNetwork: vertices must be in BFS order");
    const double a = std::fabs(coeff[v]);
    if (!(a >= 0.0) || !std::isfinite(a))
      throw std::invalid_argument("TreeNetwork: non-finite coefficient");
  }
}

void TreeNetwork::write_json(const std::filesystem::path& path) const {
  nlohmann::json j;
  j["p"] = p;
  j["parents"] = std::vector<std::size_t>(parent.begin() + 1, parent.end());
  j["coeffs"] = std::vector<double>(coeff.begin() + 1, coeff.end());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << "\n";
}

TreeNetwork TreeNetwork::read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  nlohmann::json j;
  in >> j;
  TreeNetwork t;
  t.p = j.at("p").get<std::size_t>();
  const auto parents = j.at("parents").get<std::vector<std::size_t>>();
  const auto coeffs = j.at("coeffs").get<std::vector<double>>();
  t.parent.assign(1, 0);
  t.parent.insert(t.parent.end(), parents.begin(), parents.end());
  t.coeff.assign(1, 0.0);
  t.coeff.insert(t.coeff.end(), coeffs.begin(), coeffs.end());
  t.validate();
  return t;
}

void SimConfig::validate() const {
  if (p < 2) throw std::invalid_argument("SimConfig: p must be at least 2");
  if (n < 2) throw std::invalid_argument("SimConfig: n must be at least 2");
  if (!(coeff_low > 0.0)) throw std::invalid_argument("SimConfig: coeff_low must be positive");
  if (!(coeff_high > coeff_low))
    throw std::invalid_argument("SimConfig: coeff_high must exceed coeff_low");
  if (!(positive_sign_prob > 0.0 && positive_sign_prob < 1.0))
    throw std::invalid_argument("SimConfig: positive_sign_prob must lie in (0,1)");
  if (!(noise_sd > 0.0)) throw std::invalid_argument("SimConfig: noise_sd must be positive");
}

TreeNetwork generate_topology(const SimConfig& config, RngStream& rng,
                              std::vector<std::size_t>* drawn_offspring) {
  config.validate();
  std::lognormal_distribution<double> offspring(config.offspring_log_mean,
                                                config.offspring_log_sd);
  TreeNetwork t;
  t.p = config.p;
  t.parent.assign(config.p, 0);
  t.coeff.assign(config.p, 0.0);

  std::vector<std::size_t> generation{0};
  std::size_t placed = 1;
  while (placed < config.p) {
    std::vector<std::size_t> next;
    for (std::size_t v : generation) {
      if (placed == config.p) break;
      // ceiling rounding keeps every count >= 1
      const auto count =
          static_cast<std::size_t>(std::ceil(offspring(rng)));
      if (drawn_offspring) drawn_offspring->push_back(count);
      for (std::size_t c = 0; c < count && placed < config.p; ++c) {
        t.parent[placed] = v;
        next.push_back(placed);
        ++placed;
      }
    }
    generation = std::move(next);
  }

  std::uniform_real_distribution<double> mag(config.coeff_low, config.coeff_high);
  std::bernoulli_distribution positive(config.positive_sign_prob);
  for (std::size_t v = 1; v < t.p; ++v) {
    const double m = mag(rng);
    t.coeff[v] = positive(rng) ? m : -m;
  }
  return t;
}

Dataset generate_data(const TreeNetwork& tree, const SimConfig& config, RngStream& rng) {
  if (tree.p != config.p)
    throw std::invalid_argument("generate_data: tree and config disagree on p");
  std::normal_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> noise(0.0, config.noise_sd);
  Dataset d;
  d.values = Matrix(config.n, config.p);
  d.names.resize(config.p);
  for (std::size_t j = 0; j < config.p; ++j) d.names[j] = "X" + std::to_string(j + 1);
  for (std::size_t i = 0; i < config.n; ++i) d.values(i, 0) = unit(rng);
  for (std::size_t v = 1; v < config.p; ++v)
    for (std::size_t i = 0; i < config.n; ++i)
      d.values(i, v) = tree.coeff[v] * d.values(i, tree.parent[v]) + noise(rng);
  return d;
}

SimPair generate_pair(const SimConfig& config, RngStream& rng) {
  SimPair out;
  out.tree = generate_topology(config, rng);
  out.pilot = generate_data(out.tree, config, rng);
  out.study = generate_data(out.tree, config, rng);
  return out;
}

}  // namespace netinf
