#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace oscsim {

using Qubit = std::uint32_t;

enum class GateKind { X, Y, Z, H, V, Vdg, Ry, Rz, Swap };

enum class Polarity { Open, Closed };

struct Control {
    Qubit qubit;
    Polarity polarity = Polarity::Closed;
};

inline Control closed(Qubit q) { return {q, Polarity::Closed}; }
inline Control open(Qubit q) { return {q, Polarity::Open}; }

struct Gate {
    GateKind kind = GateKind::X;
    double angle = 0.0;  // radians, Ry/Rz only
    std::vector<Qubit> targets;
    std::vector<Control> controls;

    bool is_rotation() const { return kind == GateKind::Ry || kind == GateKind::Rz; }
};

const char* kind_name(GateKind k);
Gate inverse(const Gate& g);

/// Ordered gate list over `width` qubits. Qubit 0 is the top wire and the
/// most significant bit of basis labels.
///
/// `global_phase` is a scalar e^{i*phase} multiplying the product of gates;
/// it is metadata only until the circuit is controlled, at which point it is
/// realized as an Rz on the control. `calls` tallies named sub-circuit uses
/// and is merged on append.
class Circuit {
public:
    explicit Circuit(std::size_t width = 0, std::string label = {});

    std::size_t width() const { return width_; }
    const std::vector<Gate>& gates() const { return gates_; }
    const std::string& label() const { return label_; }
    double global_phase() const { return global_phase_; }
    const std::map<std::string, std::size_t>& calls() const { return calls_; }
    std::size_t size() const { return gates_.size(); }
    bool empty() const { return gates_.empty(); }

    void set_label(std::string l) { label_ = std::move(l); }
    void add_global_phase(double phase) { global_phase_ += phase; }
    void record_call(const std::string& name, std::size_t count = 1) { calls_[name] += count; }

    Circuit& add(Gate g);

    Circuit& x(Qubit t, std::vector<Control> c = {});
    Circuit& y(Qubit t, std::vector<Control> c = {});
    Circuit& z(Qubit t, std::vector<Control> c = {});
    Circuit& h(Qubit t, std::vector<Control> c = {});
    Circuit& v(Qubit t, std::vector<Control> c = {});
    Circuit& ry(Qubit t, double theta, std::vector<Control> c = {});
    Circuit& rz(Qubit t, double theta, std::vector<Control> c = {});
    Circuit& swap(Qubit a, Qubit b, std::vector<Control> c = {});

    /// Appends `sub` acting on wires 0..sub.width()-1.
    Circuit& append(const Circuit& sub);
    /// Appends `sub` with its wire i placed on wire_map[i].
    Circuit& append(const Circuit& sub, std::span<const Qubit> wire_map);

private:
    void check_gate(const Gate& g) const;

    std::size_t width_;
    std::vector<Gate> gates_;
    std::string label_;
    double global_phase_ = 0.0;
    std::map<std::string, std::size_t> calls_;
};

Circuit dagger(const Circuit& c);

/// Every gate gains `ctrl` as an extra control. `ctrl` must lie inside the
/// width and be untouched by `c`.
Circuit add_control(const Circuit& c, Qubit ctrl, Polarity polarity);

/// Bit-string control: applies add_control for each entry.
Circuit add_controls(const Circuit& c, std::span<const Control> ctrls);

/// Widens `c` to `width` wires, mapping wire i to wire_map[i].
Circuit embed(const Circuit& c, std::size_t width, std::span<const Qubit> wire_map);

/// SWAP sequence realizing the wire permutation: the state on wire i ends up
/// on wire perm[i].
Circuit permutation_network(std::span<const Qubit> perm);

// ---------------------------------------------------------------- counting

/// Cost charged to a gate with m >= 2 controls: sum_i coeffs[i] * m^i.
/// Gates with 0 or 1 controls cost 1.
struct CostModel {
    std::vector<double> coeffs{-1.0, 8.0};
    double cost(std::size_t m) const;
};

struct GateCount {
    std::map<std::pair<GateKind, std::size_t>, std::size_t> histogram;
    double elementary = 0.0;

    std::size_t total() const;
    std::size_t of(GateKind k, std::size_t controls) const;
    std::size_t of_kind(GateKind k) const;
};

GateCount count_gates(const Circuit& c, const CostModel& model = {});

// ---------------------------------------------------------- serialization

/// One gate per line: `KIND angle targets controls`, e.g.
/// `RY 0.785398 3 0,~1` where `~` marks an open control and `-` an empty list.
std::string to_text(const Circuit& c);
Circuit from_text(const std::string& text);

}  // namespace oscsim
