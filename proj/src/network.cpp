#include "crnparam/network.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace crnparam {

namespace {

bool is_phantom_symbol(const std::string& s) { return s.rfind("sigma", 0) == 0; }

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

bool is_identifier(const std::string& s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

using NamedComplex = std::vector<std::pair<std::string, std::int64_t>>;

NamedComplex parse_complex(const std::string& text, std::size_t line) {
    std::string t = trim(text);
    if (t.empty()) throw ParseError(line, "empty complex");
    if (t == "0") return {};
    NamedComplex out;
    for (const std::string& term : split(t, '+')) {
        if (term.empty()) throw ParseError(line, "empty term in complex '" + t + "'");
        std::size_t i = 0;
        while (i < term.size() && std::isdigit(static_cast<unsigned char>(term[i]))) ++i;
        std::int64_t coeff = 1;
        if (i > 0) coeff = std::stoll(term.substr(0, i));
        std::string rest = trim(term.substr(i));
        if (i > 0 && !rest.empty() && rest[0] == '*') rest = trim(rest.substr(1));
        if (!is_identifier(rest)) throw ParseError(line, "bad species term '" + term + "'");
        if (coeff <= 0) throw ParseError(line, "non-positive coefficient in '" + term + "'");
        auto it = std::find_if(out.begin(), out.end(), [&](const auto& p) { return p.first == rest; });
        if (it == out.end())
            out.emplace_back(rest, coeff);
        else
            it->second += coeff;
    }
    return out;
}

struct RawReaction {
    std::string label;
    NamedComplex source;
    NamedComplex product;
    std::string rate;
    std::size_t line;
};

}  // namespace

ReactionNetwork::ReactionNetwork(std::vector<std::string> species, const std::vector<ReactionSpec>& reactions)
    : species_(std::move(species)) {
    std::set<std::string> names(species_.begin(), species_.end());
    if (names.size() != species_.size()) throw std::invalid_argument("duplicate species name");
    std::set<std::string> labels, symbols;
    auto complex_index = [&](const ComplexVector& c) {
        if (c.size() != species_.size()) throw std::invalid_argument("complex length does not match species count");
        for (auto v : c)
            if (v < 0) throw std::invalid_argument("negative complex coefficient");
        auto it = std::find(complexes_.begin(), complexes_.end(), c);
        if (it != complexes_.end()) return static_cast<std::size_t>(it - complexes_.begin());
        complexes_.push_back(c);
        return complexes_.size() - 1;
    };
    for (const auto& spec : reactions) {
        if (!labels.insert(spec.label).second) throw std::invalid_argument("duplicate reaction label " + spec.label);
        if (!symbols.insert(spec.rate_symbol).second)
            throw std::invalid_argument("rate symbol " + spec.rate_symbol + " bound to two reactions");
        Reaction r;
        r.label = spec.label;
        r.source = complex_index(spec.source);
        r.product = complex_index(spec.product);
        r.rate_symbol = spec.rate_symbol;
        r.phantom = spec.phantom;
        if ((r.source == r.product) != r.phantom)
            throw std::invalid_argument("reaction " + spec.label +
                                        (r.phantom ? ": phantom edge must join equal complexes" : ": source equals product"));
        reactions_.push_back(r);
    }
}

std::size_t ReactionNetwork::species_index(const std::string& name) const {
    auto it = std::find(species_.begin(), species_.end(), name);
    if (it == species_.end()) throw std::out_of_range("unknown species " + name);
    return static_cast<std::size_t>(it - species_.begin());
}

std::vector<ReactionSpec> ReactionNetwork::reaction_specs() const {
    std::vector<ReactionSpec> out;
    for (const auto& r : reactions_)
        out.push_back({r.label, complexes_[r.source], complexes_[r.product], r.rate_symbol, r.phantom});
    return out;
}

ReactionNetwork parse_network(const std::string& text) {
    std::vector<RawReaction> raw;
    std::istringstream in(text);
    std::string line_text;
    std::size_t line = 0;
    std::set<std::string> labels, symbols;
    while (std::getline(in, line_text)) {
        ++line;
        auto hash = line_text.find('#');
        if (hash != std::string::npos) line_text = line_text.substr(0, hash);
        std::string s = trim(line_text);
        if (s.empty()) continue;
        auto colon = s.find(':');
        auto semi = s.find(';');
        if (colon == std::string::npos) throw ParseError(line, "missing ':' after reaction label");
        if (semi == std::string::npos || semi < colon) throw ParseError(line, "missing ';' before rate symbol");
        auto label_list = split(s.substr(0, colon), ',');
        auto rate_list = split(s.substr(semi + 1), ',');
        std::string body = s.substr(colon + 1, semi - colon - 1);
        bool reversible = false;
        std::size_t arrow = body.find("<->");
        std::size_t arrow_len = 3;
        if (arrow != std::string::npos) {
            reversible = true;
        } else {
            arrow = body.find("->");
            arrow_len = 2;
            if (arrow == std::string::npos) throw ParseError(line, "missing arrow");
        }
        const std::size_t expected = reversible ? 2 : 1;
        if (label_list.size() != expected)
            throw ParseError(line, reversible ? "reversible reaction needs two labels" : "irreversible reaction needs one label");
        if (rate_list.size() != expected)
            throw ParseError(line, reversible ? "reversible reaction needs two rate symbols" : "irreversible reaction needs one rate symbol");
        for (const auto& l : label_list)
            if (!is_identifier(l)) throw ParseError(line, "bad reaction label '" + l + "'");
        for (const auto& k : rate_list)
            if (!is_identifier(k)) throw ParseError(line, "bad rate symbol '" + k + "'");
        NamedComplex lhs = parse_complex(body.substr(0, arrow), line);
        NamedComplex rhs = parse_complex(body.substr(arrow + arrow_len), line);
        if (body.find("->", arrow + arrow_len) != std::string::npos) throw ParseError(line, "more than one arrow");
        for (std::size_t i = 0; i < expected; ++i) {
            if (!labels.insert(label_list[i]).second) throw ParseError(line, "duplicate reaction label " + label_list[i]);
            if (!symbols.insert(rate_list[i]).second)
                throw ParseError(line, "rate symbol " + rate_list[i] + " redefined");
        }
        raw.push_back({label_list[0], lhs, rhs, rate_list[0], line});
        if (reversible) raw.push_back({label_list[1], rhs, lhs, rate_list[1], line});
    }
    std::vector<std::string> species;
    auto note = [&](const NamedComplex& c) {
        for (const auto& [name, coeff] : c)
            if (std::find(species.begin(), species.end(), name) == species.end()) species.push_back(name);
    };
    for (const auto& r : raw) {
        note(r.source);
        note(r.product);
    }
    auto vectorize = [&](const NamedComplex& c) {
        ComplexVector v(species.size(), 0);
        for (const auto& [name, coeff] : c)
            v[static_cast<std::size_t>(std::find(species.begin(), species.end(), name) - species.begin())] += coeff;
        return v;
    };
    std::vector<ReactionSpec> specs;
    for (const auto& r : raw) {
        ReactionSpec spec{r.label, vectorize(r.source), vectorize(r.product), r.rate, false};
        if (spec.source == spec.product) {
            if (!is_phantom_symbol(r.rate)) throw ParseError(r.line, "source equals product in " + r.label);
            spec.phantom = true;
        }
        specs.push_back(std::move(spec));
    }
    return ReactionNetwork(std::move(species), specs);
}

ReactionNetwork load_network(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_network(ss.str());
}

std::string format_complex(const ComplexVector& c, const std::vector<std::string>& species) {
    std::string out;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) continue;
        if (!out.empty()) out += " + ";
        if (c[i] != 1) out += std::to_string(c[i]) + "*";
        out += species[i];
    }
    return out.empty() ? "0" : out;
}

std::string serialize_network(const ReactionNetwork& net) {
    std::string out;
    for (const auto& r : net.reactions()) {
        out += r.label + ": " + format_complex(net.complexes()[r.source], net.species()) + " -> " +
               format_complex(net.complexes()[r.product], net.species()) + " ; " + r.rate_symbol + "\n";
    }
    return out;
}

RationalMatrix stoichiometric_matrix(const ReactionNetwork& net) {
    RationalMatrix n(net.species_count(), net.reaction_count());
    for (std::size_t k = 0; k < net.reaction_count(); ++k) {
        const auto& ys = net.source_of(k);
        const auto& yp = net.product_of(k);
        for (std::size_t i = 0; i < net.species_count(); ++i) n(i, k) = yp[i] - ys[i];
    }
    return n;
}

std::vector<std::vector<std::size_t>> weak_components(
    std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (auto [a, b] : edges) {
        auto ra = find(a), rb = find(b);
        if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
    }
    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t v = 0; v < n; ++v) groups[find(v)].push_back(v);
    std::vector<std::vector<std::size_t>> out;
    for (auto& [root, members] : groups) out.push_back(std::move(members));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<std::size_t>> strong_components(
    std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    std::vector<std::vector<std::size_t>> adj(n);
    for (auto [a, b] : edges) adj[a].push_back(b);
    // iterative Tarjan
    std::vector<long> index(n, -1), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    std::vector<std::vector<std::size_t>> out;
    long counter = 0;
    for (std::size_t start = 0; start < n; ++start) {
        if (index[start] >= 0) continue;
        std::vector<std::pair<std::size_t, std::size_t>> call{{start, 0}};
        index[start] = low[start] = counter++;
        stack.push_back(start);
        on_stack[start] = true;
        while (!call.empty()) {
            auto& [v, next] = call.back();
            if (next < adj[v].size()) {
                std::size_t w = adj[v][next++];
                if (index[w] < 0) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.emplace_back(w, 0);
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
            } else {
                std::size_t done = v;
                call.pop_back();
                if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
                if (low[done] == index[done]) {
                    std::vector<std::size_t> comp;
                    std::size_t w;
                    do {
                        w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        comp.push_back(w);
                    } while (w != done);
                    std::sort(comp.begin(), comp.end());
                    out.push_back(std::move(comp));
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

StructuralSummary structural_summary(const ReactionNetwork& net) {
    StructuralSummary s;
    s.species = net.species_count();
    s.complexes = net.complex_count();
    s.reactions = net.reaction_count();
    s.rank = rank(stoichiometric_matrix(net));
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (const auto& r : net.reactions())
        if (!r.phantom) edges.emplace_back(r.source, r.product);
    s.linkage_class_members = weak_components(net.complex_count(), edges);
    s.strong_class_members = strong_components(net.complex_count(), edges);
    s.linkage_classes = s.linkage_class_members.size();
    s.strong_linkage_classes = s.strong_class_members.size();
    s.deficiency = static_cast<std::int64_t>(s.complexes) - static_cast<std::int64_t>(s.linkage_classes) -
                   static_cast<std::int64_t>(s.rank);
    s.weakly_reversible = s.linkage_classes == s.strong_linkage_classes;
    return s;
}

std::vector<double> reaction_fluxes(const ReactionNetwork& net, const RateMap& rates, std::span<const double> x) {
    if (x.size() != net.species_count()) throw std::invalid_argument("concentration vector length mismatch");
    std::vector<double> v(net.reaction_count(), 0.0);
    for (std::size_t k = 0; k < net.reaction_count(); ++k) {
        const auto& r = net.reactions()[k];
        if (r.phantom) continue;
        auto it = rates.find(r.rate_symbol);
        if (it == rates.end()) throw std::out_of_range("missing rate constant " + r.rate_symbol);
        double flux = it->second;
        const auto& y = net.complexes()[r.source];
        for (std::size_t i = 0; i < y.size(); ++i)
            if (y[i]) flux *= std::pow(x[i], static_cast<double>(y[i]));
        v[k] = flux;
    }
    return v;
}

std::vector<double> ode_rhs(const ReactionNetwork& net, const RateMap& rates, std::span<const double> x) {
    std::vector<double> v = reaction_fluxes(net, rates, x);
    std::vector<double> f(net.species_count(), 0.0);
    for (std::size_t k = 0; k < net.reaction_count(); ++k) {
        if (v[k] == 0.0) continue;
        const auto& ys = net.source_of(k);
        const auto& yp = net.product_of(k);
        for (std::size_t i = 0; i < f.size(); ++i) f[i] += static_cast<double>(yp[i] - ys[i]) * v[k];
    }
    return f;
}

RationalMatrix conservation_laws(const ReactionNetwork& net) { return cokernel_basis(stoichiometric_matrix(net)); }

}  // namespace crnparam
