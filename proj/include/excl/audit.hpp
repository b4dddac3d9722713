#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "excl/events.hpp"
#include "excl/graphs.hpp"
#include "excl/quantum.hpp"

namespace excl {

/// Flagging threshold: a clique probability sum above 1 + kAuditTolerance
/// counts as a violation of the exclusivity bound.
inline constexpr double kAuditTolerance = 1e-9;

/// Probability tables for the two experiments, keyed by the canonical
/// event families (8 entries each). The two sides are independent, so a
/// joint event's probability is the product of its parts.
class JointModel {
public:
    JointModel(std::vector<double> london_probabilities,
               std::vector<double> paris_probabilities)
        : london_family_(london_events()),
          paris_family_(paris_events()),
          london_probs_(std::move(london_probabilities)),
          paris_probs_(std::move(paris_probabilities)) {
        if (london_probs_.size() != 8 || paris_probs_.size() != 8)
            throw std::invalid_argument("JointModel: need exactly 8 probabilities per side");
        for (double p : london_probs_)
            if (!(p >= 0.0 && p <= 1.0))
                throw std::invalid_argument("JointModel: London probability out of [0,1]");
        for (double p : paris_probs_)
            if (!(p >= 0.0 && p <= 1.0))
                throw std::invalid_argument("JointModel: Paris probability out of [0,1]");
    }

    /// Both sides at their quantum maxima. The Paris entries are the
    /// ordering-averaged context values (all six orderings agree in the
    /// exact simulation; averaging defines behavior for noisy tables).
    static JointModel quantum() {
        const LondonModel london;
        const Ket state = paris_state();
        const std::vector<Projector> projectors = paris_projectors();
        std::vector<double> paris;
        for (int i = 0; i < 8; ++i) {
            const auto values =
                context_probabilities_all_orderings(state, paris_context(i), projectors);
            double sum = 0.0;
            for (double v : values) sum += v;
            paris.push_back(sum / 6.0);
        }
        return JointModel(london.event_probabilities(), paris);
    }

    /// Counterfactual: a uniform London probability (e.g. a hypothetical
    /// super-quantum value) against the quantum Paris side.
    static JointModel with_uniform_london(double p_l) {
        JointModel model = quantum();
        model.london_probs_.assign(8, p_l);
        for (double p : model.london_probs_)
            if (!(p >= 0.0 && p <= 1.0))
                throw std::invalid_argument("JointModel: London probability out of [0,1]");
        return model;
    }

    const EventFamily& london_family() const { return london_family_; }
    const EventFamily& paris_family() const { return paris_family_; }
    const std::vector<double>& london_probabilities() const { return london_probs_; }
    const std::vector<double>& paris_probabilities() const { return paris_probs_; }

    double london_probability(const Event& e) const {
        return lookup(london_family_, london_probs_, e, "London");
    }
    double paris_probability(const Event& e) const {
        return lookup(paris_family_, paris_probs_, e, "Paris");
    }

private:
    static double lookup(const EventFamily& family, const std::vector<double>& probs,
                         const Event& e, const char* side) {
        for (std::size_t i = 0; i < family.size(); ++i)
            if (family[i] == e) return probs[i];
        throw std::invalid_argument(std::string("JointModel: unknown ") + side + " event " +
                                    e.label());
    }

    EventFamily london_family_;
    EventFamily paris_family_;
    std::vector<double> london_probs_;
    std::vector<double> paris_probs_;
};

/// Independence product rule for a global event.
inline double joint_probability(const JointModel& model, const Event& l, const Event& p) {
    return model.london_probability(l) * model.paris_probability(p);
}

/// Sum of the 8 global-event probabilities; equals 1 at the quantum maxima.
inline double s_lp(const JointModel& model) {
    static const int kParisIndex[8] = {6, 2, 5, 1, 7, 3, 0, 4};
    double sum = 0.0;
    for (int k = 0; k < 8; ++k)
        sum += model.london_probabilities()[static_cast<std::size_t>(k)] *
               model.paris_probabilities()[static_cast<std::size_t>(kParisIndex[k])];
    return sum;
}

/// The 64-vertex graph of all joint events. Vertex l*8 + p is the join of
/// London event l and Paris event p; two joint events are adjacent iff
/// they are exclusive on the London side or on the Paris side.
inline ExclusivityGraph product_exclusivity_graph(const JointModel& model) {
    const EventFamily& london = model.london_family();
    const EventFamily& paris = model.paris_family();
    std::vector<Event> joint;
    std::vector<std::string> labels;
    joint.reserve(64);
    for (int l = 0; l < 8; ++l)
        for (int p = 0; p < 8; ++p) {
            joint.push_back(joint_event(london[static_cast<std::size_t>(l)],
                                        paris[static_cast<std::size_t>(p)]));
            labels.push_back(joint.back().label());
        }
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < 64; ++u)
        for (int w = u + 1; w < 64; ++w)
            if (exclusive(joint[static_cast<std::size_t>(u)], joint[static_cast<std::size_t>(w)]))
                edges.emplace_back(u, w);
    return ExclusivityGraph::from_edges(64, edges, std::move(labels));
}

struct CliqueProbability {
    std::vector<int> vertices; // ascending, in product-graph indexing
    double probability_sum = 0.0;

    friend bool operator==(const CliqueProbability& a, const CliqueProbability& b) {
        return a.vertices == b.vertices && a.probability_sum == b.probability_sum;
    }
};

struct AuditReport {
    double s_l = 0.0;
    double s_p = 0.0;
    double s_lp = 0.0;
    bool slp_pairwise_exclusive = false;
    std::size_t clique_count = 0;
    CliqueProbability max_clique;
    std::vector<CliqueProbability> violations; // empty on pass

    bool pass() const { return violations.empty(); }

    friend bool operator==(const AuditReport& a, const AuditReport& b) {
        return a.s_l == b.s_l && a.s_p == b.s_p && a.s_lp == b.s_lp &&
               a.slp_pairwise_exclusive == b.slp_pairwise_exclusive &&
               a.clique_count == b.clique_count && a.max_clique == b.max_clique &&
               a.violations == b.violations;
    }
};

/// Exhaustive exclusivity audit: enumerates every maximal clique of the
/// product graph, sums each clique's joint probabilities, and flags any
/// sum above 1 + kAuditTolerance.
inline AuditReport e_principle_audit(const JointModel& model) {
    AuditReport report;
    for (double p : model.london_probabilities()) report.s_l += p;
    for (double p : model.paris_probabilities()) report.s_p += p;
    report.s_lp = s_lp(model);

    const EventFamily slp = slp_events();
    report.slp_pairwise_exclusive = true;
    for (std::size_t i = 0; i < slp.size(); ++i)
        for (std::size_t j = i + 1; j < slp.size(); ++j)
            if (!exclusive(slp[i], slp[j])) report.slp_pairwise_exclusive = false;

    const ExclusivityGraph product = product_exclusivity_graph(model);
    const std::vector<std::vector<int>> cliques = max_cliques(product);
    report.clique_count = cliques.size();

    for (const std::vector<int>& clique : cliques) {
        double sum = 0.0;
        for (int v : clique)
            sum += model.london_probabilities()[static_cast<std::size_t>(v / 8)] *
                   model.paris_probabilities()[static_cast<std::size_t>(v % 8)];
        if (sum > report.max_clique.probability_sum) {
            report.max_clique.probability_sum = sum;
            report.max_clique.vertices = clique;
        }
        if (sum > 1.0 + kAuditTolerance) report.violations.push_back({clique, sum});
    }
    return report;
}

} // namespace excl
