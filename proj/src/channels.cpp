#include "irslab/channels.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace irslab::channels {

namespace {

Eigen::VectorXcd polar_vector(const Eigen::VectorXd& amp, const Eigen::VectorXd& phi) {
    Eigen::VectorXcd h(amp.size());
    for (Eigen::Index i = 0; i < amp.size(); ++i) h[i] = std::polar(amp[i], phi[i]);
    return h;
}

}  // namespace

Eigen::VectorXcd ChannelRealization::h_iu() const { return polar_vector(amp_iu, phi_iu); }
Eigen::VectorXcd ChannelRealization::h_si() const { return polar_vector(amp_si, phi_si); }

ChannelRealization sample_channels(const scenario::ScenarioParams& params, int n_elements,
                                   rng::Engine& eng) {
    if (n_elements < 1) throw std::invalid_argument("sample_channels: need at least one element");
    const auto budget = scenario::link_budget(params);

    ChannelRealization ch;
    ch.n = n_elements;
    ch.mu_iu = budget.mu_iu;
    ch.mu_si = budget.mu_si;
    ch.mu_su = budget.mu_su;
    ch.phi_iu.resize(n_elements);
    ch.phi_si.resize(n_elements);
    const double two_pi = 2.0 * M_PI;
    for (int i = 0; i < n_elements; ++i) ch.phi_iu[i] = rng::uniform(eng, 0.0, two_pi);
    for (int i = 0; i < n_elements; ++i) ch.phi_si[i] = rng::uniform(eng, 0.0, two_pi);
    ch.phi_su = params.phi_su;
    ch.amp_iu = Eigen::VectorXd::Constant(n_elements, std::sqrt(budget.mu_iu));
    ch.amp_si = Eigen::VectorXd::Constant(n_elements, std::sqrt(budget.mu_si));
    ch.amp_su = std::sqrt(budget.mu_su);
    return ch;
}

CascadedDiagonals cascaded_diagonals(const ChannelRealization& ch) {
    CascadedDiagonals d;
    d.d_iu = ch.h_iu();
    d.d_si = ch.h_si();
    d.h_su = ch.h_su();
    return d;
}

void dump_csv(const ChannelRealization& ch, std::ostream& out) {
    out << "index,phi_IU,phi_SI\n";
    char buf[96];
    for (int i = 0; i < ch.n; ++i) {
        std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g\n", i, ch.phi_iu[i], ch.phi_si[i]);
        out << buf;
    }
}

ChannelRealization load_csv(std::istream& in, const scenario::ScenarioParams& params) {
    std::string line;
    if (!std::getline(in, line) || line.rfind("index,phi_IU,phi_SI", 0) != 0)
        throw std::invalid_argument("channel csv: missing header");

    std::vector<double> phi_iu, phi_si;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        int idx = 0;
        double a = 0.0, b = 0.0;
        if (std::sscanf(line.c_str(), "%d,%lg,%lg", &idx, &a, &b) != 3)
            throw std::invalid_argument("channel csv: bad row '" + line + "'");
        phi_iu.push_back(a);
        phi_si.push_back(b);
    }
    if (phi_iu.empty()) throw std::invalid_argument("channel csv: no rows");

    const auto budget = scenario::link_budget(params);
    ChannelRealization ch;
    ch.n = static_cast<int>(phi_iu.size());
    ch.mu_iu = budget.mu_iu;
    ch.mu_si = budget.mu_si;
    ch.mu_su = budget.mu_su;
    ch.phi_iu = Eigen::Map<const Eigen::VectorXd>(phi_iu.data(), ch.n);
    ch.phi_si = Eigen::Map<const Eigen::VectorXd>(phi_si.data(), ch.n);
    ch.phi_su = params.phi_su;
    ch.amp_iu = Eigen::VectorXd::Constant(ch.n, std::sqrt(budget.mu_iu));
    ch.amp_si = Eigen::VectorXd::Constant(ch.n, std::sqrt(budget.mu_si));
    ch.amp_su = std::sqrt(budget.mu_su);
    return ch;
}

}  // namespace irslab::channels
