#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace excl {

// Party labels. The CHSH experiment has two wings whose settings are
// written u and v; the complementary experiment has a single party P.
// The first character of the party label identifies the experiment site
// ('L' or 'P'), which is what joint events and serialization group by.
inline constexpr const char* kLondonWingU = "Lu";
inline constexpr const char* kLondonWingV = "Lv";
inline constexpr const char* kParisParty = "P";

/// A measurement setting, identified exactly by (party, name).
struct Setting {
    std::string party;
    int name = 0;

    char site() const { return party.empty() ? '?' : party.front(); }

    friend bool operator==(const Setting& a, const Setting& b) {
        return a.party == b.party && a.name == b.name;
    }
    friend bool operator<(const Setting& a, const Setting& b) {
        return a.party != b.party ? a.party < b.party : a.name < b.name;
    }
};

/// An outcome assignment to a finite set of settings. Entries keep the
/// notation order (London wing u, wing v; Paris x, y, z); identity is
/// extensional, i.e. the set of (setting, outcome) pairs.
class Event {
public:
    using Entry = std::pair<Setting, int>;

    static Event from_assignment(std::vector<Entry> entries) {
        if (entries.empty())
            throw std::invalid_argument("Event: empty assignment");
        for (std::size_t i = 0; i < entries.size(); ++i) {
            const Setting& s = entries[i].first;
            const int outcome = entries[i].second;
            if (s.site() != 'L' && s.site() != 'P')
                throw std::invalid_argument("Event: unknown party label '" + s.party + "'");
            // Outcome alphabets: +/-1 on the London side, {0,1} on the Paris side.
            if (s.site() == 'L' && outcome != -1 && outcome != 1)
                throw std::invalid_argument("Event: London outcome must be -1 or +1");
            if (s.site() == 'P' && outcome != 0 && outcome != 1)
                throw std::invalid_argument("Event: Paris outcome must be 0 or 1");
            for (std::size_t j = 0; j < i; ++j)
                if (entries[j].first == s)
                    throw std::invalid_argument("Event: duplicate setting");
        }
        return Event(std::move(entries));
    }

    const std::vector<Entry>& assignment() const { return entries_; }

    std::optional<int> outcome(const Setting& s) const {
        for (const Entry& e : entries_)
            if (e.first == s) return e.second;
        return std::nullopt;
    }

    /// Text form matching the inequality notation: "a,b|x,y" for one site,
    /// "a,b;c,d,e|u,v;x,y,z" for joint events (sites separated by ';').
    std::string label() const {
        std::string outcomes;
        std::string settings;
        char current_site = '\0';
        for (const Entry& e : entries_) {
            const char site = e.first.site();
            if (!outcomes.empty()) {
                const char sep = (site == current_site) ? ',' : ';';
                outcomes.push_back(sep);
                settings.push_back(sep);
            }
            outcomes += std::to_string(e.second);
            settings += std::to_string(e.first.name);
            current_site = site;
        }
        return outcomes + "|" + settings;
    }

    friend bool operator==(const Event& a, const Event& b) {
        if (a.entries_.size() != b.entries_.size()) return false;
        auto sa = a.entries_;
        auto sb = b.entries_;
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        return sa == sb;
    }

private:
    explicit Event(std::vector<Entry> entries) : entries_(std::move(entries)) {}

    static void sort_entries(std::vector<Entry>& v) { std::sort(v.begin(), v.end()); }
    friend bool operator<(const Event& a, const Event& b) {
        auto sa = a.entries_;
        auto sb = b.entries_;
        sort_entries(sa);
        sort_entries(sb);
        return sa < sb;
    }

    std::vector<Entry> entries_;
};

/// Two events are exclusive iff some shared setting is assigned
/// different outcomes. Symmetric; never true for an event with itself.
inline bool exclusive(const Event& a, const Event& b) {
    for (const Event::Entry& e : a.assignment()) {
        const std::optional<int> other = b.outcome(e.first);
        if (other && *other != e.second) return true;
    }
    return false;
}

/// An ordered family of events; the index is the inequality's summation index.
struct EventFamily {
    std::vector<Event> events;
    std::string label;

    std::size_t size() const { return events.size(); }
    const Event& operator[](std::size_t i) const { return events[i]; }
};

/// The 8 CHSH events: for each context (i,j) in {0,1}^2 (lexicographic),
/// the two outcome pairs (a,b) in {-1,1}^2 with (a+1)/2 xor (b+1)/2 = i*j,
/// ordered by descending a.
inline EventFamily london_events() {
    EventFamily family;
    family.label = "S_L";
    for (int i = 0; i <= 1; ++i) {
        for (int j = 0; j <= 1; ++j) {
            for (int a : {1, -1}) {
                const int bit_b = ((a + 1) / 2) ^ (i * j);
                const int b = 2 * bit_b - 1;
                family.events.push_back(Event::from_assignment({
                    {{kLondonWingU, i}, a},
                    {{kLondonWingV, j}, b},
                }));
            }
        }
    }
    return family;
}

/// The 8 events of the complementary inequality: event i assigns outcome 0
/// to observables i and i+1 and outcome 1 to observable i+2 (indices mod 8).
inline EventFamily paris_events() {
    EventFamily family;
    family.label = "S_P";
    for (int i = 0; i < 8; ++i) {
        family.events.push_back(Event::from_assignment({
            {{kParisParty, i}, 0},
            {{kParisParty, (i + 1) % 8}, 0},
            {{kParisParty, (i + 2) % 8}, 1},
        }));
    }
    return family;
}

/// Joins a London-side and a Paris-side event into one global event.
/// The two assignments must live on disjoint sites.
inline Event joint_event(const Event& l, const Event& p) {
    for (const Event::Entry& e : l.assignment())
        if (e.first.site() != 'L')
            throw std::invalid_argument("joint_event: first event must use London-side settings only");
    for (const Event::Entry& e : p.assignment())
        if (e.first.site() != 'P')
            throw std::invalid_argument("joint_event: second event must use Paris-side settings only");
    std::vector<Event::Entry> entries = l.assignment();
    entries.insert(entries.end(), p.assignment().begin(), p.assignment().end());
    return Event::from_assignment(std::move(entries));
}

/// Family indices (london, paris) of the 8 global events, in inequality order.
inline const std::vector<std::pair<int, int>>& slp_member_indices() {
    static const std::vector<std::pair<int, int>> pairs = {
        {0, 6}, {1, 2}, {2, 5}, {3, 1}, {4, 7}, {5, 3}, {6, 0}, {7, 4}};
    return pairs;
}

/// The 8 pairwise-exclusive global events whose probability sum the
/// exclusivity principle bounds by 1.
inline EventFamily slp_events() {
    const EventFamily london = london_events();
    const EventFamily paris = paris_events();
    EventFamily family;
    family.label = "S_LP";
    for (const auto& [l, p] : slp_member_indices())
        family.events.push_back(joint_event(london[static_cast<std::size_t>(l)],
                                            paris[static_cast<std::size_t>(p)]));
    return family;
}

} // namespace excl
