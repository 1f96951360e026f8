#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "keo/errors.hpp"
#include "keo/ordering.hpp"
#include "keo/rational.hpp"

// Named orderings from the position-dependent-mass literature, written as
// exact weighted building blocks. Term order follows the usual published form.
namespace keo::catalog {

using R = Rational;

inline OrderingSpec bdd() { return OrderingSpec({{1, 0, -1, 0}}, "BDD"); }

inline OrderingSpec gw() { return OrderingSpec({{R(1, 2), -1, 0, 0}, {R(1, 2), 0, 0, -1}}, "GW"); }

inline OrderingSpec zk() { return OrderingSpec({{1, R(-1, 2), 0, R(-1, 2)}}, "ZK"); }

/// Single symmetric term m^a p m^(-1-2a) p m^a.
inline OrderingSpec mb(const R& a) { return OrderingSpec({{1, a, R(-1) - a - a, a}}, "MB"); }

inline OrderingSpec mm() { return mb(R(-1, 4)).renamed("MM"); }

/// Two-term mirrored family 1/2 [m^a p m^b p m^g + m^g p m^b p m^a].
inline OrderingSpec von_roos(const R& a, const R& g)
{
    const R b = R(-1) - a - g;
    return OrderingSpec({{R(1, 2), a, b, g}, {R(1, 2), g, b, a}}, "vR");
}

inline OrderingSpec lkda(const R& a)
{
    const R b = R(-1) - a;
    return OrderingSpec({{R(1, 2), a, b, 0}, {R(1, 2), 0, b, a}}, "LKDA");
}

inline OrderingSpec lk() { return lkda(R(-1, 2)).renamed("LK"); }

inline OrderingSpec weyl()
{
    return OrderingSpec({{R(1, 4), -1, 0, 0}, {R(1, 2), 0, -1, 0}, {R(1, 4), 0, 0, -1}}, "W");
}

/// Four-term form whose linear parameters vanish for every a != -1.
inline OrderingSpec da(const R& a)
{
    if (a == R(-1))
        throw Error(ErrorCode::ParameterOutOfDomain, "DA requires alpha != -1 (weights divide by alpha + 1)");
    const R norm = R(2) * (a + R(1));
    const R b = R(-1) - a;
    return OrderingSpec({{a / norm, -1, 0, 0}, {a / norm, 0, 0, -1}, {R(1) / norm, a, b, 0}, {R(1) / norm, 0, b, a}},
                        "DA");
}

inline OrderingSpec lima() { return OrderingSpec({{R(1, 3), -1, 0, 0}, {R(1, 3), 0, -1, 0}, {R(1, 3), 0, 0, -1}}, "Lal"); }

/// Mixture of BDD and ZK that sits in class III: 1/3 BDD + 2/3 ZK.
inline OrderingSpec yan_yee() { return OrderingSpec({{R(1, 3), 0, -1, 0}, {R(2, 3), R(-1, 2), 0, R(-1, 2)}}, "YY"); }

struct Entry {
    std::string_view name;
    std::size_t arity;
    std::string_view parameters; // comma separated, for diagnostics
};

inline constexpr Entry entries[] = {
    {"vR", 2, "alpha,gamma"}, {"MB", 1, "alpha"}, {"BDD", 0, ""}, {"ZK", 0, ""},   {"MM", 0, ""},  {"GW", 0, ""},
    {"LKDA", 1, "alpha"},    {"LK", 0, ""},      {"W", 0, ""},   {"DA", 1, "alpha"}, {"Lal", 0, ""}, {"YY", 0, ""},
};

inline std::string_view canonical_name(std::string_view name)
{
    if (name == "L al." || name == "Lal." || name == "L_al")
        return "Lal";
    if (name == "Weyl")
        return "W";
    if (name == "VR" || name == "vonRoos")
        return "vR";
    return name;
}

/// Looks an entry up by name; parameterized entries take their rational arguments in order.
inline OrderingSpec get(std::string_view name, std::span<const Rational> args = {})
{
    const std::string_view key = canonical_name(name);
    const Entry* found = nullptr;
    for (const auto& e : entries)
        if (e.name == key)
            found = &e;
    if (found == nullptr) {
        std::string known;
        for (const auto& e : entries)
            known += (known.empty() ? "" : ", ") + std::string(e.name);
        throw Error(ErrorCode::UnknownName, "unknown ordering '" + std::string(name) + "' (known: " + known + ")");
    }
    if (args.size() != found->arity) {
        throw Error(ErrorCode::ParameterOutOfDomain,
                    std::string(found->name) + " takes " + std::to_string(found->arity) + " parameter(s)"
                        + (found->arity ? " (" + std::string(found->parameters) + ")" : std::string())
                        + ", got " + std::to_string(args.size()));
    }
    if (key == "BDD") return bdd();
    if (key == "GW") return gw();
    if (key == "ZK") return zk();
    if (key == "MM") return mm();
    if (key == "W") return weyl();
    if (key == "LK") return lk();
    if (key == "Lal") return lima();
    if (key == "YY") return yan_yee();
    if (key == "DA") return da(args[0]);
    if (key == "MB") return mb(args[0]);
    if (key == "LKDA") return lkda(args[0]);
    return von_roos(args[0], args[1]);
}

inline OrderingSpec get(std::string_view name, std::initializer_list<Rational> args)
{
    return get(name, std::span<const Rational>(args.begin(), args.size()));
}

/// One published-table row with the sample arguments used for parameterized entries.
struct TableRow {
    std::string name;
    std::vector<Rational> arguments;
};

/// The eleven literature rows in published order. Parameterized rows carry fixed
/// sample arguments so the output is concrete and reproducible.
inline std::vector<TableRow> table_rows()
{
    return {
        {"vR", {R(-1, 4), R(-1, 2)}}, {"MB", {R(-1, 3)}}, {"BDD", {}}, {"ZK", {}}, {"MM", {}},  {"GW", {}},
        {"LKDA", {R(-1, 4)}},         {"LK", {}},         {"W", {}},   {"DA", {R(1, 2)}}, {"Lal", {}},
    };
}

} // namespace keo::catalog
