// coxtool: command-line frontend for the coxtools library.
//
// Subcommands: group, element, lenT, redT, chi, closure, orbit, reduce,
// extend, normalize, classify, check, affine. Output is JSON on stdout
// (progress goes to stderr); --dot writes Hurwitz orbit graphs in DOT
// format. Exit codes: 0 success, 2 invalid input, 3 cap exceeded,
// 4 indeterminate.

#include <CLI11.hpp>
#include <json.hpp>

#include <coxtools/classify.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

using json = nlohmann::ordered_json;
using namespace cox;

namespace {

const std::set<std::string> kAffineTypes = {"At1", "At2", "Bt2", "Ct2", "Gt2"};

struct RunConfig {
    std::string type;
    std::string word;
    std::string factorization;
    std::string out;
    size_t cap = 1000000;
    long seed = 0;
    int level_bound = 3;
};

std::vector<int> parse_word(const std::string& s) {
    std::vector<int> out;
    std::istringstream in(s);
    int x;
    while (in >> x) out.push_back(x);
    if (!in.eof()) throw std::invalid_argument("word: expected whitespace-separated integers");
    return out;
}

std::vector<std::vector<int>> parse_factorization(const std::string& s) {
    json j = json::parse(s);
    if (!j.is_array()) throw std::invalid_argument("factorization: expected a JSON array of words");
    std::vector<std::vector<int>> out;
    for (const auto& w : j) {
        std::vector<int> word;
        for (const auto& v : w) word.push_back(v.get<int>());
        out.push_back(word);
    }
    return out;
}

json word_json(const std::vector<int>& w) { return json(w); }

json matrix_json(const CoxeterMatrix& cm) {
    json rows = json::array();
    for (int i = 0; i < cm.rank(); ++i) {
        json row = json::array();
        for (int j = 0; j < cm.rank(); ++j) row.push_back(cm.label(i, j));
        rows.push_back(row);
    }
    return rows;
}

json root_json(const Root& r) {
    json out = json::array();
    for (const auto& x : r) out.push_back(x.str());
    return out;
}

json qvec_json(const QVec& v) {
    json out = json::array();
    for (const auto& x : v) out.push_back(x.get_str());
    return out;
}

Rational parse_rational(const json& v) {
    if (v.is_number_integer()) return Rational(v.get<long>());
    if (v.is_string()) return Rational(v.get<std::string>());
    throw std::invalid_argument("expected integer or rational string");
}

CoxeterSystem make_system(const RunConfig& cfg, const std::string& matrix) {
    if (!matrix.empty()) {
        json j = json::parse(matrix);
        std::vector<std::vector<int>> m;
        for (const auto& row : j) m.push_back(row.get<std::vector<int>>());
        return CoxeterSystem(CoxeterMatrix(m));
    }
    if (cfg.type.empty()) throw std::invalid_argument("--type or --matrix is required");
    return CoxeterSystem(coxeter_matrix_catalog(cfg.type));
}

json braid_json(const BraidWord& b) {
    json out = json::array();
    for (const auto& l : b) out.push_back(json::array({l.index, l.sign}));
    return out;
}

json tuple_json(const CoxeterSystem& W, const std::vector<Element>& f) {
    json out = json::array();
    for (const auto& t : f) out.push_back(word_json(W.reduced_word(t)));
    return out;
}

std::vector<Element> tuple_from_words(const CoxeterSystem& W, const std::vector<std::vector<int>>& ws) {
    std::vector<Element> out;
    for (const auto& w : ws) out.push_back(W.from_word(w));
    return out;
}

// word of a finite Weyl element over the simple roots of the datum
std::vector<int> finite_word(const CartanDatum& d, Matrix<Rational> u) {
    std::vector<int> rev;
    Matrix<Rational> id = Matrix<Rational>::identity(d.dim);
    int guard = 0;
    while (!(u == id)) {
        if (++guard > 1000) throw std::invalid_argument("finite part is not a Weyl element");
        bool moved = false;
        for (int i = 0; i < d.rank && !moved; ++i) {
            QVec img = u.apply(d.simples[static_cast<size_t>(i)]);
            if (!d.is_positive_root(img) && d.simple_coords(img)) {
                u = u * d.reflection_matrix(d.simples[static_cast<size_t>(i)]);
                rev.push_back(i);
                moved = true;
            }
        }
        if (!moved) throw std::invalid_argument("finite part is not a Weyl element");
    }
    std::reverse(rev.begin(), rev.end());
    return rev;
}

json affine_element_json(const AffineSystem& A, const AffineElement& x) {
    const CartanDatum& d = A.datum();
    auto coroots = d.simple_coroots();
    Matrix<Rational> basis(d.dim, d.rank);
    for (int i = 0; i < d.dim; ++i)
        for (int j = 0; j < d.rank; ++j) basis(i, j) = coroots[static_cast<size_t>(j)][static_cast<size_t>(i)];
    auto coords = solve(basis, x.lambda);
    if (!coords) throw std::invalid_argument("lambda is outside the coroot span");
    json lam = json::array();
    for (const auto& c : *coords) {
        if (c.get_den() != 1) throw std::invalid_argument("lambda is outside the coroot lattice");
        lam.push_back(c.get_num().get_si());
    }
    return json{{"u", word_json(finite_word(d, x.u))}, {"lambda", lam}};
}

AffineElement affine_element_from_json(const AffineSystem& A, const json& j) {
    const CartanDatum& d = A.datum();
    Matrix<Rational> u = Matrix<Rational>::identity(d.dim);
    for (const auto& v : j.at("u")) {
        int i = v.get<int>();
        if (i < 0 || i >= d.rank) throw std::invalid_argument("element: finite generator index");
        u = u * d.reflection_matrix(d.simples[static_cast<size_t>(i)]);
    }
    QVec lambda(static_cast<size_t>(d.dim), 0);
    auto coroots = d.simple_coroots();
    size_t idx = 0;
    for (const auto& v : j.at("lambda")) {
        if (idx >= coroots.size()) throw std::invalid_argument("element: lambda has too many entries");
        lambda = qadd(lambda, qscale(coroots[idx], Rational(v.get<long>())));
        ++idx;
    }
    if (idx != coroots.size()) throw std::invalid_argument("element: lambda has too few entries");
    return {u, lambda};
}

AffineReflection affine_reflection_from_json(const AffineSystem& A, const json& j) {
    QVec root;
    for (const auto& v : j.at("root")) root.push_back(parse_rational(v));
    if (static_cast<int>(root.size()) != A.datum().dim)
        throw std::invalid_argument("reflection: root dimension mismatch");
    AffineReflection r{root, j.at("k").get<long>()};
    AffineElement e = A.reflection(r);
    if (!A.as_reflection(e)) throw std::invalid_argument("reflection: root is not a root of the system");
    return r;
}

json affine_reflection_json(const AffineReflection& r) {
    return json{{"root", json::parse(qvec_json(r.root).dump())}, {"k", r.k}};
}

void emit(const RunConfig& cfg, json out) {
    out["seed"] = cfg.seed;
    out["cap"] = cfg.cap;
    if (cfg.out.empty()) {
        std::cout << out.dump(2) << "\n";
    } else {
        std::ofstream f(cfg.out);
        if (!f) throw std::invalid_argument("cannot open output file " + cfg.out);
        f << out.dump(2) << "\n";
    }
}

void write_orbit_dot(const std::string& path, const CoxeterSystem& W, const Orbit& orb) {
    std::map<std::string, size_t> index;
    for (size_t i = 0; i < orb.tuples.size(); ++i) index[tuple_encode(orb.tuples[i])] = i;
    std::ofstream f(path);
    if (!f) throw std::invalid_argument("cannot open DOT file " + path);
    f << "digraph hurwitz {\n";
    for (size_t i = 0; i < orb.tuples.size(); ++i) {
        std::string label;
        for (const auto& t : orb.tuples[i]) {
            if (!label.empty()) label += " | ";
            for (int s : W.reduced_word(t)) label += std::to_string(s);
        }
        f << "  n" << i << " [label=\"" << label << "\"];\n";
    }
    int m = static_cast<int>(orb.tuples[0].size());
    for (size_t i = 0; i < orb.tuples.size(); ++i)
        for (int k = 1; k < m; ++k) {
            auto img = hurwitz_move(orb.tuples[i], k, +1);
            auto it = index.find(tuple_encode(img));
            if (it != index.end())
                f << "  n" << i << " -> n" << it->second << " [label=\"s" << k << "\"];\n";
        }
    f << "}\n";
}

// bounded breadth-first search of the Hurwitz orbit for a tuple with an
// adjacent equal pair; nullopt when the cap is hit first
std::optional<std::vector<Element>> find_duplicate_in_orbit(const CoxeterSystem& W,
                                                            const std::vector<Element>& seed,
                                                            size_t cap) {
    auto has_dup = [](const std::vector<Element>& f) {
        for (size_t i = 0; i + 1 < f.size(); ++i)
            if (f[i] == f[i + 1]) return true;
        return false;
    };
    if (has_dup(seed)) return seed;
    std::set<std::string> seen{tuple_encode(seed)};
    std::vector<std::vector<Element>> frontier{seed};
    for (size_t head = 0; head < frontier.size() && head < cap; ++head) {
        for (int i = 1; i < static_cast<int>(seed.size()); ++i)
            for (int sign : {1, -1}) {
                auto img = hurwitz_move(frontier[head], i, sign);
                if (!seen.insert(tuple_encode(img)).second) continue;
                if (has_dup(img)) return img;
                frontier.push_back(img);
            }
    }
    return std::nullopt;
}

int cmd_group(const RunConfig& cfg, const std::string& matrix, bool roots, bool reflections,
              bool elements, const std::string& bruhat_dot) {
    CoxeterSystem W = make_system(cfg, matrix);
    json out{{"type", cfg.type.empty() ? json() : json(cfg.type)},
             {"rank", W.rank()},
             {"finite", W.is_finite()},
             {"coxeter_matrix", matrix_json(W.coxeter_matrix())}};
    if (W.is_finite()) out["order"] = W.enumerate(cfg.cap).size();
    if (roots) {
        json r = json::array();
        for (const auto& a : W.positive_roots()) r.push_back(root_json(a));
        for (const auto& a : W.positive_roots()) {
            Root neg = a;
            for (auto& x : neg) x = -x;
            r.push_back(root_json(neg));
        }
        out["roots"] = r;
    }
    if (reflections) {
        json r = json::array();
        for (const auto& t : W.reflections()) r.push_back(word_json(W.reduced_word(t)));
        out["reflections"] = r;
    }
    if (elements) {
        json r = json::array();
        for (const auto& w : W.enumerate(cfg.cap)) r.push_back(word_json(W.reduced_word(w)));
        out["elements"] = r;
    }
    if (!bruhat_dot.empty()) {
        auto all = W.enumerate(cfg.cap);
        std::map<std::string, size_t> index;
        for (size_t i = 0; i < all.size(); ++i) index[all[i].encode()] = i;
        std::ofstream f(bruhat_dot);
        if (!f) throw std::invalid_argument("cannot open DOT file " + bruhat_dot);
        f << "digraph bruhat {\n";
        for (size_t i = 0; i < all.size(); ++i) {
            std::string label;
            for (int s : W.reduced_word(all[i])) label += std::to_string(s);
            f << "  n" << i << " [label=\"" << (label.empty() ? "e" : label) << "\"];\n";
        }
        for (size_t i = 0; i < all.size(); ++i)
            for (const auto& t : W.reflections()) {
                Element v = all[i] * t;
                if (W.length(v) == W.length(all[i]) + 1)
                    f << "  n" << i << " -> n" << index.at(v.encode()) << ";\n";
            }
        f << "}\n";
    }
    emit(cfg, out);
    return 0;
}

int cmd_element(const RunConfig& cfg, const std::string& matrix) {
    CoxeterSystem W = make_system(cfg, matrix);
    Element w = W.from_word(parse_word(cfg.word));
    json out{{"word", word_json(W.reduced_word(w))},
             {"length", W.length(w)},
             {"length_T", reflection_length(W, w)},
             {"is_reflection", is_reflection(W, w)}};
    if (auto r = W.as_reflection(w)) out["root"] = root_json(*r);
    json inv = json::array();
    for (const auto& t : W.inversion_set(w)) inv.push_back(word_json(W.reduced_word(t)));
    out["inversion_set"] = inv;
    emit(cfg, out);
    return 0;
}

int cmd_lenT(const RunConfig& cfg, const std::string& matrix) {
    CoxeterSystem W = make_system(cfg, matrix);
    Element w = W.from_word(parse_word(cfg.word));
    emit(cfg, json{{"length_T", reflection_length(W, w)}});
    return 0;
}

int cmd_redT(const RunConfig& cfg, const std::string& matrix) {
    std::vector<std::vector<Element>> R;
    const bool affine = kAffineTypes.count(cfg.type) > 0;
    if (affine) {
        AffineSystem A(cfg.type);
        R = A.red_T(A.from_word(parse_word(cfg.word)), cfg.cap);
        json facs = json::array();
        for (const auto& f : R) facs.push_back(tuple_json(A.cox(), f));
        emit(cfg, json{{"count", R.size()}, {"factorizations", facs}});
        return 0;
    }
    CoxeterSystem W = make_system(cfg, matrix);
    R = red_T(W, W.from_word(parse_word(cfg.word)), cfg.cap);
    json facs = json::array();
    for (const auto& f : R) facs.push_back(tuple_json(W, f));
    emit(cfg, json{{"count", R.size()}, {"factorizations", facs}});
    return 0;
}

int cmd_chi(const RunConfig& cfg, const std::string& matrix, const std::string& reflections) {
    CoxeterSystem W = make_system(cfg, matrix);
    auto gens = tuple_from_words(W, parse_factorization(reflections));
    auto c = chi(W, gens);
    json words = json::array(), roots = json::array();
    for (const auto& t : c) {
        words.push_back(word_json(W.reduced_word(t)));
        if (auto r = W.as_reflection(t)) roots.push_back(root_json(*r));
    }
    emit(cfg, json{{"chi", words}, {"roots", roots}});
    return 0;
}

int cmd_closure(const RunConfig& cfg, const std::string& matrix, const std::string& words) {
    const bool affine = kAffineTypes.count(cfg.type) > 0;
    if (affine) {
        AffineSystem A(cfg.type);
        std::vector<AffineElement> X;
        for (const auto& w : parse_factorization(words)) X.push_back(A.from_word(w));
        auto pc = A.parabolic_closure(X);
        json refs = json::array();
        for (const auto& r : pc.reflections) refs.push_back(affine_reflection_json(*A.as_reflection(r)));
        emit(cfg, json{{"whole", pc.whole}, {"rank", pc.rank}, {"reflections", refs}});
        return 0;
    }
    CoxeterSystem W = make_system(cfg, matrix);
    auto pc = parabolic_closure(W, tuple_from_words(W, parse_factorization(words)));
    json refs = json::array();
    for (const auto& t : pc.reflections) refs.push_back(word_json(W.reduced_word(t)));
    emit(cfg, json{{"whole", pc.whole}, {"rank", pc.rank}, {"reflections", refs}});
    return 0;
}

int cmd_orbit(const RunConfig& cfg, const std::string& matrix, const std::string& dot) {
    CoxeterSystem W = make_system(cfg, matrix);
    auto seed = tuple_from_words(W, parse_factorization(cfg.factorization));
    Orbit orb = orbit(W, seed, cfg.cap);
    json tuples = json::array();
    for (const auto& f : orb.tuples) tuples.push_back(tuple_json(W, f));
    if (!dot.empty()) write_orbit_dot(dot, W, orb);
    emit(cfg, json{{"size", orb.tuples.size()}, {"tuples", tuples}});
    return 0;
}

int cmd_reduce(const RunConfig& cfg, const std::string& matrix) {
    CoxeterSystem W = make_system(cfg, matrix);
    auto f = tuple_from_words(W, parse_factorization(cfg.factorization));
    if (W.is_finite()) {
        ReduceResult r = reduce(W, f);
        emit(cfg, json{{"braid", braid_json(r.braid)},
                       {"entries", tuple_json(W, r.entries)},
                       {"reduced_length", r.reduced_length}});
        return 0;
    }
    try {
        ReduceResult r = reduce_by_length_S(W, f);
        emit(cfg, json{{"braid", braid_json(r.braid)},
                       {"entries", tuple_json(W, r.entries)},
                       {"reduced_length", r.reduced_length}});
        return 0;
    } catch (const std::invalid_argument&) {
        // the tuple is not l_S-padded; fall back to a bounded orbit search
        // for an adjacent duplicate pair
        size_t cap = std::min<size_t>(cfg.cap, 10000);
        auto dup = find_duplicate_in_orbit(W, f, cap);
        if (dup) {
            emit(cfg, json{{"status", "duplicate found"}, {"entries", tuple_json(W, *dup)}});
            return 0;
        }
        emit(cfg, json{{"status", "indeterminate"},
                       {"note", "no duplicate pair reachable (cap)"},
                       {"visited_cap", cap}});
        return 4;
    }
}

int cmd_extend(const RunConfig& cfg, const std::string& matrix) {
    CoxeterSystem W = make_system(cfg, matrix);
    ExtendResult r = extend_to_simples(W, parse_word(cfg.word),
                                       tuple_from_words(W, parse_factorization(cfg.factorization)));
    emit(cfg, json{{"q", word_json(r.q)}, {"braid", braid_json(r.braid)}});
    return 0;
}

int cmd_normalize(const RunConfig& cfg, const std::string& matrix) {
    CoxeterSystem W = make_system(cfg, matrix);
    Element x = W.from_word(parse_word(cfg.word));
    PathNormalForm r = normalize_path(W, x, tuple_from_words(W, parse_factorization(cfg.factorization)));
    json out{{"braid", braid_json(r.braid)},
             {"entries", tuple_json(W, r.entries)},
             {"duplicate", r.duplicate}};
    if (r.duplicate)
        out["dup_pos"] = r.dup_pos;
    else
        out["valley"] = r.valley;
    emit(cfg, out);
    return 0;
}

int cmd_classify(const RunConfig& cfg, const std::string& matrix, const std::string& element) {
    if (kAffineTypes.count(cfg.type)) {
        AffineSystem A(cfg.type);
        AffineElement x = element.empty() ? A.from_word(parse_word(cfg.word))
                                          : affine_element_from_json(A, json::parse(element));
        AffineClassification c = classify_affine(A, x, cfg.cap);
        json wit = json::array();
        for (const auto& t : c.witness) wit.push_back(affine_element_json(A, t));
        emit(cfg, json{{"element", affine_element_json(A, x)},
                       {"is_coxeter", c.is_coxeter},
                       {"is_quasi_coxeter", c.is_quasi_coxeter},
                       {"is_parabolic_quasi_coxeter", c.is_parabolic_quasi_coxeter},
                       {"is_proper_parabolic_quasi_coxeter", c.is_proper_parabolic_quasi_coxeter},
                       {"closure_whole", c.closure_whole},
                       {"witness", wit}});
        return 0;
    }
    CoxeterSystem W = make_system(cfg, matrix);
    Element w = W.from_word(parse_word(cfg.word));
    Classification c = classify_element(W, w, cfg.cap);
    json refs = json::array();
    for (const auto& t : c.closure.reflections) refs.push_back(word_json(W.reduced_word(t)));
    emit(cfg, json{{"element", word_json(W.reduced_word(w))},
                   {"is_coxeter", c.is_coxeter},
                   {"is_quasi_coxeter", c.is_quasi_coxeter},
                   {"is_parabolic_quasi_coxeter", c.is_parabolic_quasi_coxeter},
                   {"is_proper_parabolic_quasi_coxeter", c.is_proper_parabolic_quasi_coxeter},
                   {"witness", tuple_json(W, c.witness)},
                   {"closure", json{{"whole", c.closure.whole},
                                    {"rank", c.closure.rank},
                                    {"reflections", refs}}}});
    return 0;
}

int cmd_affine(const RunConfig& cfg, const std::string& element, const std::string& reflection,
               const std::string& reflections, bool generates, bool class_key) {
    AffineSystem A(cfg.type);
    if (class_key) {
        if (reflection.empty()) throw std::invalid_argument("--class-key needs --reflection");
        AffineReflection r = affine_reflection_from_json(A, json::parse(reflection));
        emit(cfg, json{{"reflection", affine_reflection_json(r)}, {"class_key", A.class_key(r)}});
        return 0;
    }
    if (generates) {
        if (reflections.empty()) throw std::invalid_argument("--generates needs --reflections");
        std::vector<AffineReflection> rs;
        for (const auto& j : json::parse(reflections)) rs.push_back(affine_reflection_from_json(A, j));
        emit(cfg, json{{"generates_whole", A.generates_whole(rs, cfg.cap)}});
        return 0;
    }
    AffineElement x = element.empty() ? A.from_word(parse_word(cfg.word))
                                      : affine_element_from_json(A, json::parse(element));
    json out{{"element", affine_element_json(A, x)},
             {"word", word_json(A.reduced_word(x))},
             {"length", A.length(x)},
             {"is_elliptic", A.is_elliptic(x)},
             {"is_translation", x.is_translation()},
             {"length_T", detail::affine_reflection_length(A, x)}};
    if (auto r = A.as_reflection(x)) {
        out["reflection"] = affine_reflection_json(*r);
        out["class_key"] = A.class_key(*r);
    }
    emit(cfg, out);
    return 0;
}

// ---- check harnesses -------------------------------------------------

std::vector<Element> random_reflection_tuple(const CoxeterSystem& W, std::mt19937& rng, int len) {
    auto T = W.reflections();
    std::uniform_int_distribution<size_t> pick(0, T.size() - 1);
    std::vector<Element> f;
    for (int i = 0; i < len; ++i) f.push_back(T[pick(rng)]);
    return f;
}

// Reduction theorem: the returned braid rewrites the tuple into a
// T-reduced prefix followed by adjacent equal pairs.
int check_main1(const RunConfig& cfg, int samples) {
    CoxeterSystem W = make_system(cfg, "");
    std::mt19937 rng(static_cast<unsigned>(cfg.seed));
    std::uniform_int_distribution<int> len(2, 6);
    int checked = 0;
    for (int i = 0; i < samples; ++i) {
        auto f = random_reflection_tuple(W, rng, len(rng));
        Element w = tuple_product(W, f);
        ReduceResult r = reduce(W, f);
        bool ok = apply_braid(f, r.braid) == r.entries && tuple_product(W, r.entries) == w &&
                  r.reduced_length == reflection_length(W, w);
        std::vector<Element> prefix(r.entries.begin(), r.entries.begin() + r.reduced_length);
        ok = ok && static_cast<int>(prefix.size()) == reflection_length(W, tuple_product(W, prefix));
        for (size_t k = static_cast<size_t>(r.reduced_length); k < r.entries.size(); k += 2)
            ok = ok && r.entries[k] == r.entries[k + 1];
        if (!ok) {
            emit(cfg, json{{"theorem", "main1"}, {"pass", false},
                           {"counterexample", tuple_json(W, f)}});
            return 1;
        }
        ++checked;
    }
    emit(cfg, json{{"theorem", "main1"}, {"pass", true}, {"checked", checked}});
    return 0;
}

// l_S-padded variant of the reduction theorem
int check_main1_1(const RunConfig& cfg, int samples) {
    CoxeterSystem W = make_system(cfg, "");
    std::mt19937 rng(static_cast<unsigned>(cfg.seed));
    std::uniform_int_distribution<int> len(1, 5), gen(0, W.rank() - 1), pad(0, 1);
    auto T = W.reflections();
    std::uniform_int_distribution<size_t> pick(0, T.size() - 1);
    int checked = 0;
    for (int i = 0; i < samples; ++i) {
        std::vector<int> word;
        int l = len(rng);
        for (int k = 0; k < l; ++k) word.push_back(gen(rng));
        Element w = W.from_word(word);
        std::vector<Element> f;
        for (int s : W.reduced_word(w)) f.push_back(W.simple(s));
        for (int k = 0; k < pad(rng); ++k) {
            Element t = T[pick(rng)];
            f.push_back(t);
            f.push_back(t);
        }
        ReduceResult r = reduce_by_length_S(W, f);
        bool ok = apply_braid(f, r.braid) == r.entries && tuple_product(W, r.entries) == w &&
                  r.reduced_length == W.length(w);
        if (!ok) {
            emit(cfg, json{{"theorem", "main1.1"}, {"pass", false},
                           {"counterexample", tuple_json(W, f)}});
            return 1;
        }
        ++checked;
    }
    emit(cfg, json{{"theorem", "main1.1"}, {"pass", true}, {"checked", checked}});
    return 0;
}

// Extension theorem, exhaustively over the group
int check_main2(const RunConfig& cfg) {
    CoxeterSystem W = make_system(cfg, "");
    int checked = 0;
    for (const auto& w : W.enumerate(cfg.cap)) {
        auto word = W.reduced_word(w);
        for (const auto& f : red_T(W, w, cfg.cap)) {
            ExtendResult r = extend_to_simples(W, word, f); // replay-verified internally
            Element q = W.identity();
            for (int s : r.q) q = q * W.simple(s);
            if (q != W.identity()) {
                emit(cfg, json{{"theorem", "main2"}, {"pass", false},
                               {"element", word_json(word)}, {"counterexample", tuple_json(W, f)}});
                return 1;
            }
            ++checked;
        }
        std::cerr << "." << std::flush;
    }
    std::cerr << "\n";
    emit(cfg, json{{"theorem", "main2"}, {"pass", true}, {"checked", checked}});
    return 0;
}

std::vector<AffineElement> bounded_affine_elements(const AffineSystem& A, int ls_bound) {
    std::set<AffineElement> seen{A.identity()};
    std::vector<AffineElement> order{A.identity()};
    for (size_t head = 0; head < order.size(); ++head) {
        if (A.length(order[head]) >= ls_bound) continue;
        for (int s = 0; s <= A.rank(); ++s) {
            AffineElement next = order[head] * A.generator(s);
            if (seen.insert(next).second) order.push_back(next);
        }
    }
    return order;
}

// Affine characterization of proper parabolic quasi-Coxeter elements
int check_main4(const RunConfig& cfg, int ls_bound) {
    AffineSystem A(cfg.type);
    int n = A.rank() + 1;
    int checked = 0, indeterminate = 0;
    for (const auto& x : bounded_affine_elements(A, ls_bound)) {
        if (!A.is_elliptic(x)) continue;
        if (detail::affine_reflection_length(A, x) > n - 1) continue;
        CorMain4Report r = check_cor_main4(A, x, cfg.level_bound, cfg.cap);
        if (r.verdict == Tribool::False) {
            emit(cfg, json{{"theorem", "main4"}, {"pass", false},
                           {"counterexample", affine_element_json(A, x)}});
            return 1;
        }
        if (r.verdict == Tribool::Indeterminate) ++indeterminate;
        ++checked;
        if (checked % 50 == 0) std::cerr << "." << std::flush;
    }
    std::cerr << "\n";
    json out{{"theorem", "main4"}, {"pass", indeterminate == 0}, {"checked", checked},
             {"indeterminate", indeterminate}};
    emit(cfg, out);
    return indeterminate == 0 ? 0 : 4;
}

// Rank n-1 characterization
int check_thm13(const RunConfig& cfg, int ls_bound) {
    if (kAffineTypes.count(cfg.type)) {
        AffineSystem A(cfg.type);
        int n = A.rank() + 1;
        int checked = 0, indeterminate = 0;
        for (const auto& x : bounded_affine_elements(A, ls_bound)) {
            if (detail::affine_reflection_length(A, x) != n - 1) continue;
            CorMain4Report r = check_cor_main4(A, x, cfg.level_bound, cfg.cap);
            bool rank_ok = true;
            if (r.proper_pqc) {
                auto pc = A.parabolic_closure({x});
                rank_ok = !pc.whole && pc.rank == n - 1;
            }
            if (r.verdict == Tribool::False || !rank_ok) {
                emit(cfg, json{{"theorem", "thm13"}, {"pass", false},
                               {"counterexample", affine_element_json(A, x)}});
                return 1;
            }
            if (r.verdict == Tribool::Indeterminate) ++indeterminate;
            ++checked;
        }
        emit(cfg, json{{"theorem", "thm13"}, {"pass", indeterminate == 0}, {"checked", checked},
                       {"indeterminate", indeterminate}});
        return indeterminate == 0 ? 0 : 4;
    }
    CoxeterSystem W = make_system(cfg, "");
    int n = W.rank(), checked = 0;
    for (const auto& x : W.enumerate(cfg.cap)) {
        if (reflection_length(W, x) != n - 1) continue;
        Thm13Report r = check_thm13(W, x, cfg.cap);
        if (!r.agree || !r.rank_ok) {
            emit(cfg, json{{"theorem", "thm13"}, {"pass", false},
                           {"counterexample", word_json(W.reduced_word(x))}});
            return 1;
        }
        ++checked;
    }
    emit(cfg, json{{"theorem", "thm13"}, {"pass", true}, {"checked", checked}});
    return 0;
}

int check_multiset(const RunConfig& cfg, int length) {
    CoxeterSystem W = make_system(cfg, "");
    Element w = W.from_word(parse_word(cfg.word));
    int L = length > 0 ? length : reflection_length(W, w) + 2;
    MultisetReport r = multiset_criterion_check(W, w, L, cfg.cap);
    emit(cfg, json{{"theorem", "multiset"}, {"pass", r.holds},
                   {"factorizations", r.factorization_count}, {"orbits", r.orbit_count},
                   {"multisets", r.multiset_count}, {"length", L}});
    return r.holds ? 0 : 1;
}

int check_transitivity(const RunConfig& cfg) {
    CoxeterSystem W = make_system(cfg, "");
    if (!cfg.word.empty()) {
        TransitivityReport r = transitivity_check(W, W.from_word(parse_word(cfg.word)), cfg.cap);
        emit(cfg, json{{"theorem", "transitivity"}, {"pass", r.agree},
                       {"red_count", r.red_count}, {"orbit_sizes", r.orbit_sizes},
                       {"transitive", r.transitive}, {"pqc", r.pqc}});
        return r.agree ? 0 : 1;
    }
    int checked = 0;
    for (const auto& w : W.enumerate(cfg.cap)) {
        TransitivityReport r = transitivity_check(W, w, cfg.cap);
        if (!r.agree) {
            emit(cfg, json{{"theorem", "transitivity"}, {"pass", false},
                           {"counterexample", word_json(W.reduced_word(w))}});
            return 1;
        }
        ++checked;
        if (checked % 10 == 0) std::cerr << "." << std::flush;
    }
    std::cerr << "\n";
    emit(cfg, json{{"theorem", "transitivity"}, {"pass", true}, {"checked", checked}});
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"coxtool: exact Coxeter-group and Hurwitz-action computations"};
    app.require_subcommand(1);
    app.set_config("--config");

    RunConfig cfg;
    std::string matrix, dot, bruhat_dot, reflections_arg, words_arg, element_arg, reflection_arg;
    std::string theorem;
    bool roots = false, refl_flag = false, elements = false, generates = false, class_key = false;
    int samples = 50, length = 0, ls_bound = 6;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--type", cfg.type, "catalog type name");
        sub->add_option("--cap", cfg.cap, "enumeration/orbit cap")->check(CLI::PositiveNumber);
        sub->add_option("--seed", cfg.seed, "random seed (recorded in output)");
        sub->add_option("--out", cfg.out, "write JSON here instead of stdout");
    };

    auto* g = app.add_subcommand("group", "group descriptor, roots, reflections, elements");
    add_common(g);
    g->add_option("--matrix", matrix, "Coxeter matrix as JSON (0 = infinity)");
    g->add_flag("--roots", roots, "include all roots");
    g->add_flag("--reflections", refl_flag, "include the reflections");
    g->add_flag("--elements", elements, "include all elements");
    g->add_option("--bruhat-dot", bruhat_dot, "write the Bruhat graph in DOT format");

    auto* e = app.add_subcommand("element", "element information");
    add_common(e);
    e->add_option("--matrix", matrix);
    e->add_option("--word", cfg.word, "generator-index word")->required();

    auto* lt = app.add_subcommand("lenT", "reflection length");
    add_common(lt);
    lt->add_option("--matrix", matrix);
    lt->add_option("--word", cfg.word)->required();

    auto* rt = app.add_subcommand("redT", "reduced reflection factorizations");
    add_common(rt);
    rt->add_option("--matrix", matrix);
    rt->add_option("--word", cfg.word)->required();

    auto* ch = app.add_subcommand("chi", "canonical simple system of a reflection subgroup");
    add_common(ch);
    ch->add_option("--matrix", matrix);
    ch->add_option("--reflections", reflections_arg, "JSON list of reflection words")->required();

    auto* cl = app.add_subcommand("closure", "parabolic closure");
    add_common(cl);
    cl->add_option("--matrix", matrix);
    cl->add_option("--words", words_arg, "JSON list of element words")->required();

    auto* ob = app.add_subcommand("orbit", "Hurwitz orbit of a factorization");
    add_common(ob);
    ob->add_option("--matrix", matrix);
    ob->add_option("--factorization", cfg.factorization, "JSON list of words")->required();
    ob->add_option("--dot", dot, "write the orbit graph in DOT format");

    auto* rd = app.add_subcommand("reduce", "rewrite into reduced prefix plus duplicate pairs");
    add_common(rd);
    rd->add_option("--matrix", matrix);
    rd->add_option("--factorization", cfg.factorization)->required();

    auto* ex = app.add_subcommand("extend", "extend a reduced factorization to a simple word");
    add_common(ex);
    ex->add_option("--matrix", matrix);
    ex->add_option("--word", cfg.word, "reduced word of the ambient element")->required();
    ex->add_option("--factorization", cfg.factorization)->required();

    auto* nm = app.add_subcommand("normalize", "single-valley path normal form");
    add_common(nm);
    nm->add_option("--matrix", matrix);
    nm->add_option("--word", cfg.word, "word of the start vertex x")->required();
    nm->add_option("--factorization", cfg.factorization)->required();

    auto* cf = app.add_subcommand("classify", "quasi-Coxeter classification");
    add_common(cf);
    cf->add_option("--matrix", matrix);
    cf->add_option("--word", cfg.word);
    cf->add_option("--element", element_arg, "affine element JSON {\"u\":[...],\"lambda\":[...]}");

    auto* ck = app.add_subcommand("check", "theorem harnesses");
    add_common(ck);
    ck->add_option("--theorem", theorem,
                   "one of main1|main1.1|main2|main4|thm13|multiset|transitivity")
        ->required();
    ck->add_option("--word", cfg.word);
    ck->add_option("--samples", samples, "random sample count");
    ck->add_option("--length", length, "factorization length for multiset");
    ck->add_option("--ls-bound", ls_bound, "l_S bound for affine element scans");
    ck->add_option("--level-bound", cfg.level_bound, "affine witness level bound K");

    auto* af = app.add_subcommand("affine", "affine elements, reflections, generation");
    add_common(af);
    af->add_option("--word", cfg.word);
    af->add_option("--element", element_arg);
    af->add_option("--reflection", reflection_arg, "JSON {\"root\":[...],\"k\":...}");
    af->add_option("--reflections", reflections_arg, "JSON list of affine reflections");
    af->add_flag("--generates", generates, "test generation of the whole group");
    af->add_flag("--class-key", class_key, "conjugacy class key of --reflection");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        int code = app.exit(err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (g->parsed()) return cmd_group(cfg, matrix, roots, refl_flag, elements, bruhat_dot);
        if (e->parsed()) return cmd_element(cfg, matrix);
        if (lt->parsed()) return cmd_lenT(cfg, matrix);
        if (rt->parsed()) return cmd_redT(cfg, matrix);
        if (ch->parsed()) return cmd_chi(cfg, matrix, reflections_arg);
        if (cl->parsed()) return cmd_closure(cfg, matrix, words_arg);
        if (ob->parsed()) return cmd_orbit(cfg, matrix, dot);
        if (rd->parsed()) return cmd_reduce(cfg, matrix);
        if (ex->parsed()) return cmd_extend(cfg, matrix);
        if (nm->parsed()) return cmd_normalize(cfg, matrix);
        if (cf->parsed()) return cmd_classify(cfg, matrix, element_arg);
        if (af->parsed()) return cmd_affine(cfg, element_arg, reflection_arg, reflections_arg,
                                            generates, class_key);
        if (ck->parsed()) {
            if (theorem == "main1") return check_main1(cfg, samples);
            if (theorem == "main1.1") return check_main1_1(cfg, samples);
            if (theorem == "main2") return check_main2(cfg);
            if (theorem == "main4") return check_main4(cfg, ls_bound);
            if (theorem == "thm13") return check_thm13(cfg, ls_bound);
            if (theorem == "multiset") return check_multiset(cfg, length);
            if (theorem == "transitivity") return check_transitivity(cfg);
            throw std::invalid_argument("unknown theorem '" + theorem + "'");
        }
        throw std::invalid_argument("no subcommand");
    } catch (const CapExceeded& err) {
        std::cout << json{{"error", err.what()}}.dump(2) << "\n";
        return 3;
    } catch (const AffineSystem::CapExceededAffine& err) {
        std::cout << json{{"error", err.what()}}.dump(2) << "\n";
        return 3;
    } catch (const std::invalid_argument& err) {
        std::cout << json{{"error", err.what()}}.dump(2) << "\n";
        return 2;
    } catch (const std::out_of_range& err) {
        std::cout << json{{"error", err.what()}}.dump(2) << "\n";
        return 2;
    } catch (const json::exception& err) {
        std::cout << json{{"error", err.what()}}.dump(2) << "\n";
        return 2;
    } catch (const std::runtime_error& err) {
        std::string msg = err.what();
        std::cout << json{{"error", msg}}.dump(2) << "\n";
        return msg.find("cap") != std::string::npos ? 3 : 1;
    } catch (const std::exception& err) {
        std::cout << json{{"error", err.what()}}.dump(2) << "\n";
        return 1;
    }
}
