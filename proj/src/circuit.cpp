#include "oscsim/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace oscsim {

const char* kind_name(GateKind k) {
    switch (k) {
        case GateKind::X: return "X";
        case GateKind::Y: return "Y";
        case GateKind::Z: return "Z";
        case GateKind::H: return "H";
        case GateKind::V: return "V";
        case GateKind::Vdg: return "VDG";
        case GateKind::Ry: return "RY";
        case GateKind::Rz: return "RZ";
        case GateKind::Swap: return "SWAP";
    }
    return "?";
}

static GateKind kind_from_name(const std::string& s) {
    for (GateKind k : {GateKind::X, GateKind::Y, GateKind::Z, GateKind::H, GateKind::V,
                       GateKind::Vdg, GateKind::Ry, GateKind::Rz, GateKind::Swap}) {
        if (s == kind_name(k)) return k;
    }
    throw std::invalid_argument("unknown gate kind: " + s);
}

Gate inverse(const Gate& g) {
    Gate r = g;
    switch (g.kind) {
        case GateKind::Ry:
        case GateKind::Rz: r.angle = -g.angle; break;
        case GateKind::V: r.kind = GateKind::Vdg; break;
        case GateKind::Vdg: r.kind = GateKind::V; break;
        default: break;
    }
    return r;
}

Circuit::Circuit(std::size_t width, std::string label) : width_(width), label_(std::move(label)) {}

void Circuit::check_gate(const Gate& g) const {
    std::size_t want = g.kind == GateKind::Swap ? 2 : 1;
    if (g.targets.size() != want) throw std::invalid_argument("wrong target count for gate");
    std::vector<Qubit> used(g.targets);
    for (const auto& c : g.controls) used.push_back(c.qubit);
    for (Qubit q : used) {
        if (q >= width_) throw std::out_of_range("gate qubit outside circuit width");
    }
    std::sort(used.begin(), used.end());
    if (std::adjacent_find(used.begin(), used.end()) != used.end())
        throw std::invalid_argument("gate targets and controls must be disjoint");
}

Circuit& Circuit::add(Gate g) {
    check_gate(g);
    gates_.push_back(std::move(g));
    return *this;
}

Circuit& Circuit::x(Qubit t, std::vector<Control> c) { return add({GateKind::X, 0.0, {t}, std::move(c)}); }
Circuit& Circuit::y(Qubit t, std::vector<Control> c) { return add({GateKind::Y, 0.0, {t}, std::move(c)}); }
Circuit& Circuit::z(Qubit t, std::vector<Control> c) { return add({GateKind::Z, 0.0, {t}, std::move(c)}); }
Circuit& Circuit::h(Qubit t, std::vector<Control> c) { return add({GateKind::H, 0.0, {t}, std::move(c)}); }
Circuit& Circuit::v(Qubit t, std::vector<Control> c) { return add({GateKind::V, 0.0, {t}, std::move(c)}); }
Circuit& Circuit::ry(Qubit t, double theta, std::vector<Control> c) {
    return add({GateKind::Ry, theta, {t}, std::move(c)});
}
Circuit& Circuit::rz(Qubit t, double theta, std::vector<Control> c) {
    return add({GateKind::Rz, theta, {t}, std::move(c)});
}
Circuit& Circuit::swap(Qubit a, Qubit b, std::vector<Control> c) {
    return add({GateKind::Swap, 0.0, {a, b}, std::move(c)});
}

Circuit& Circuit::append(const Circuit& sub) {
    if (sub.width() > width_) throw std::invalid_argument("appended circuit is wider than target");
    gates_.reserve(gates_.size() + sub.gates_.size());
    for (const auto& g : sub.gates_) gates_.push_back(g);
    global_phase_ += sub.global_phase_;
    for (const auto& [k, n] : sub.calls_) calls_[k] += n;
    return *this;
}

Circuit& Circuit::append(const Circuit& sub, std::span<const Qubit> wire_map) {
    if (wire_map.size() != sub.width()) throw std::invalid_argument("wire map size must equal sub width");
    gates_.reserve(gates_.size() + sub.gates_.size());
    for (const auto& g : sub.gates_) {
        Gate m = g;
        for (auto& t : m.targets) t = wire_map[t];
        for (auto& c : m.controls) c.qubit = wire_map[c.qubit];
        add(std::move(m));
    }
    global_phase_ += sub.global_phase_;
    for (const auto& [k, n] : sub.calls_) calls_[k] += n;
    return *this;
}

Circuit dagger(const Circuit& c) {
    Circuit r(c.width(), c.label().empty() ? std::string{} : c.label() + "^dg");
    for (auto it = c.gates().rbegin(); it != c.gates().rend(); ++it) r.add(inverse(*it));
    r.add_global_phase(-c.global_phase());
    for (const auto& [k, n] : c.calls()) r.record_call(k, n);
    return r;
}

Circuit add_control(const Circuit& c, Qubit ctrl, Polarity polarity) {
    if (ctrl >= c.width()) throw std::out_of_range("control qubit outside circuit width");
    Circuit r(c.width(), c.label());
    for (const auto& g : c.gates()) {
        for (Qubit t : g.targets)
            if (t == ctrl) throw std::invalid_argument("control collides with a gate target");
        for (const auto& k : g.controls)
            if (k.qubit == ctrl) throw std::invalid_argument("control collides with a gate control");
        Gate m = g;
        m.controls.push_back({ctrl, polarity});
        r.add(std::move(m));
    }
    double gp = c.global_phase();
    if (gp != 0.0) {
        // diag(1, e^{i gp}) = e^{i gp/2} Rz(gp); the open case mirrors it.
        r.rz(ctrl, polarity == Polarity::Closed ? gp : -gp);
        r.add_global_phase(gp / 2);
    }
    for (const auto& [k, n] : c.calls()) r.record_call(k, n);
    return r;
}

Circuit add_controls(const Circuit& c, std::span<const Control> ctrls) {
    Circuit r = c;
    for (const auto& k : ctrls) r = add_control(r, k.qubit, k.polarity);
    return r;
}

Circuit embed(const Circuit& c, std::size_t width, std::span<const Qubit> wire_map) {
    Circuit r(width, c.label());
    r.append(c, wire_map);
    return r;
}

Circuit permutation_network(std::span<const Qubit> perm) {
    const std::size_t n = perm.size();
    Circuit r(n, "perm");
    // where[w]: which original wire currently sits on wire w
    std::vector<Qubit> where(n);
    for (std::size_t i = 0; i < n; ++i) where[i] = static_cast<Qubit>(i);
    for (std::size_t dst = 0; dst < n; ++dst) {
        // original wire that must land on dst
        Qubit want = static_cast<Qubit>(std::find(perm.begin(), perm.end(), dst) - perm.begin());
        if (want >= n) throw std::invalid_argument("not a permutation");
        Qubit cur = static_cast<Qubit>(std::find(where.begin(), where.end(), want) - where.begin());
        if (cur != dst) {
            r.swap(static_cast<Qubit>(dst), cur);
            std::swap(where[dst], where[cur]);
        }
    }
    return r;
}

double CostModel::cost(std::size_t m) const {
    if (m < 2) return 1.0;
    double acc = 0.0, p = 1.0;
    for (double c : coeffs) {
        acc += c * p;
        p *= static_cast<double>(m);
    }
    return acc;
}

std::size_t GateCount::total() const {
    std::size_t n = 0;
    for (const auto& [k, v] : histogram) n += v;
    return n;
}

std::size_t GateCount::of(GateKind k, std::size_t controls) const {
    auto it = histogram.find({k, controls});
    return it == histogram.end() ? 0 : it->second;
}

std::size_t GateCount::of_kind(GateKind k) const {
    std::size_t n = 0;
    for (const auto& [key, v] : histogram)
        if (key.first == k) n += v;
    return n;
}

GateCount count_gates(const Circuit& c, const CostModel& model) {
    GateCount out;
    for (const auto& g : c.gates()) {
        ++out.histogram[{g.kind, g.controls.size()}];
        out.elementary += model.cost(g.controls.size());
    }
    return out;
}

std::string to_text(const Circuit& c) {
    std::ostringstream os;
    os << std::setprecision(17);
    os << "# width " << c.width() << "\n";
    if (!c.label().empty()) os << "# label " << c.label() << "\n";
    if (c.global_phase() != 0.0) os << "# phase " << c.global_phase() << "\n";
    for (const auto& g : c.gates()) {
        os << kind_name(g.kind) << ' ' << g.angle << ' ';
        for (std::size_t i = 0; i < g.targets.size(); ++i) os << (i ? "," : "") << g.targets[i];
        os << ' ';
        if (g.controls.empty()) os << '-';
        for (std::size_t i = 0; i < g.controls.size(); ++i) {
            os << (i ? "," : "") << (g.controls[i].polarity == Polarity::Open ? "~" : "")
               << g.controls[i].qubit;
        }
        os << '\n';
    }
    return os.str();
}

static std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

Circuit from_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    Circuit c;
    bool have_width = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        if (line[0] == '#') {
            std::string hash, key;
            ls >> hash >> key;
            if (key == "width") {
                std::size_t w;
                ls >> w;
                c = Circuit(w);
                have_width = true;
            } else if (key == "label") {
                std::string rest;
                std::getline(ls, rest);
                c.set_label(rest.empty() ? rest : rest.substr(1));
            } else if (key == "phase") {
                double p;
                ls >> p;
                c.add_global_phase(p);
            }
            continue;
        }
        if (!have_width) throw std::invalid_argument("circuit text lacks a width header");
        std::string kind, targets, controls;
        Gate g;
        ls >> kind >> g.angle >> targets >> controls;
        if (ls.fail()) throw std::invalid_argument("malformed gate line: " + line);
        g.kind = kind_from_name(kind);
        for (const auto& t : split(targets, ',')) g.targets.push_back(static_cast<Qubit>(std::stoul(t)));
        if (controls != "-") {
            for (const auto& t : split(controls, ',')) {
                bool op = !t.empty() && t[0] == '~';
                g.controls.push_back({static_cast<Qubit>(std::stoul(op ? t.substr(1) : t)),
                                      op ? Polarity::Open : Polarity::Closed});
            }
        }
        c.add(std::move(g));
    }
    return c;
}

}  // namespace oscsim
