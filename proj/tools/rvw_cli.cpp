// Command-line workbench: balls-in-bins bounds, the Schanuel-Brink operator,
// restricted-variable congruence counting, and the zero-sum applications.
// Reports are JSON on stdout (one object per run); a short human summary goes
// to stderr.  Exit code 0 = HOLDS/VACUOUS, 2 = VIOLATED, 1 = usage or guard
// errors.

#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rvw/rvw.hpp"

namespace {

using namespace rvw;

std::vector<Int> parse_int_list(const std::string& csv) {
    std::vector<Int> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) throw std::invalid_argument("empty list entry");
        out.emplace_back(item);
    }
    if (out.empty()) throw std::invalid_argument("empty list");
    return out;
}

std::vector<std::uint64_t> parse_u64_list(const std::string& csv) {
    std::vector<std::uint64_t> out;
    for (const Int& v : parse_int_list(csv))
        out.push_back(to_ulong_checked(v, "list entry"));
    return out;
}

// "p:v1,v2,..." -> group of type (p; v1 <= ... <= vr)
zerosum::GroupSpec parse_group(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("group format is p:v1,v2,...");
    Int p(text.substr(0, colon));
    std::vector<unsigned> exps;
    for (const Int& v : parse_int_list(text.substr(colon + 1)))
        exps.push_back(static_cast<unsigned>(to_ulong_checked(v, "exponent")));
    return zerosum::GroupSpec(p, exps);
}

// "1,2;3;4,5" -> set system (one set per ';')
zerosum::SetSystem parse_sets(const std::string& text) {
    zerosum::SetSystem F;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ';')) {
        std::vector<std::uint32_t> s;
        if (!part.empty())
            for (auto v : parse_u64_list(part))
                s.push_back(static_cast<std::uint32_t>(v));
        F.sets.push_back(std::move(s));
    }
    return F;
}

std::vector<std::vector<Int>> boxes_for_arity(
    const std::vector<std::string>& box_args, int nvars) {
    if (box_args.empty()) throw std::invalid_argument("--box required");
    std::vector<std::vector<Int>> sets;
    for (const auto& b : box_args) sets.push_back(parse_int_list(b));
    if (static_cast<int>(sets.size()) == 1 && nvars > 1)
        sets.assign(nvars, sets[0]);
    if (static_cast<int>(sets.size()) != nvars)
        throw std::invalid_argument("need one --box per variable (or one for all)");
    return sets;
}

struct Output {
    Json report;
    std::string summary;
    int exit_code = 0;
};

void emit(const Output& out, const std::string& json_out_path) {
    std::string text = out.report.dump(2);
    std::cout << text << "\n";
    if (!json_out_path.empty()) {
        std::ofstream f(json_out_path);
        f << text << "\n";
    }
    if (!out.summary.empty()) std::cerr << out.summary << "\n";
}

int verdict_exit(Verdict v) { return v == Verdict::VIOLATED ? 2 : 0; }

Json group_element_coords(const zerosum::GroupSpec& G, std::uint64_t idx) {
    Json arr = Json::array();
    for (auto c : G.decode(idx)) arr.push_back(c);
    return arr;
}

// ---- subcommand handlers ----

Output run_mbound(const std::string& bins_csv, const Int& balls) {
    bins::BinProfile profile(parse_int_list(bins_csv));
    Int m = bins::min_product(profile, balls);
    Output out;
    out.report["input"] =
        Json{{"bins", int_vector_to_json(profile.original_caps())},
             {"balls", int_to_json(balls)}};
    out.report["m"] = int_to_json(m);
    bool in_range = balls >= static_cast<long>(profile.n()) &&
                    balls <= profile.sum();
    if (in_range) {
        auto dist = bins::greedy_distribution(profile, balls);
        out.report["greedy"] = int_vector_to_json(dist.counts);
    }
    out.report["closed_form_used"] =
        in_range && profile.equal_cap().has_value() &&
        *profile.equal_cap() >= 2;
    out.summary = "m = " + m.get_str();
    return out;
}

Output run_delta(const Int& p, const std::vector<std::string>& box_args,
                 const std::string& poly_text, unsigned iters) {
    MultiPoly<Int> f = parse_poly(poly_text);
    // the box fixes the ambient dimension; the polynomial may omit variables
    int nvars = std::max(f.nvars(), 1);
    if (box_args.size() > 1)
        nvars = std::max(nvars, static_cast<int>(box_args.size()));
    RestrictedBox box(p, boxes_for_arity(box_args, nvars));
    auto ctx = sb::build_context(box);
    MultiPoly<Rat> fr = to_rational(parse_poly(poly_text, nvars));
    MultiPoly<Rat> image = sb::delta_power(fr, ctx, iters);
    Output out;
    out.report["p"] = int_to_json(p);
    out.report["iterations"] = iters;
    Json taus = Json::array(), sigmas = Json::array();
    for (const auto& t : ctx.taus) taus.push_back(poly_to_json(t));
    for (const auto& s : ctx.sigmas) sigmas.push_back(poly_to_json(s));
    out.report["tau"] = taus;
    out.report["sigma"] = sigmas;
    out.report["input"] = poly_to_json(f);
    out.report["delta_image"] = poly_to_json(image);
    out.summary = "delta image with " + std::to_string(image.term_count()) +
                  " terms";
    return out;
}

struct VerifyInstance {
    std::optional<verify::CongruenceSystem> zsys;
    std::optional<RestrictedBox> zbox;
    std::optional<verify::FqSystem> qsys;
    std::optional<verify::FqBox> qbox;
};

VerifyInstance load_instance_json(const Json& j) {
    VerifyInstance inst;
    if (j.contains("prime")) {
        Int p = int_from_json(j.at("prime"));
        std::vector<std::vector<Int>> box_sets;
        for (const auto& s : j.at("box")) {
            std::vector<Int> set;
            for (const auto& v : s) set.push_back(int_from_json(v));
            box_sets.push_back(std::move(set));
        }
        int nvars = static_cast<int>(box_sets.size());
        std::vector<MultiPoly<Int>> polys;
        for (const auto& pj : j.at("polys"))
            polys.push_back(poly_int_from_json(pj, nvars));
        std::vector<unsigned> exps(polys.size(), 1);
        if (j.contains("exps")) {
            exps.clear();
            for (const auto& v : j.at("exps"))
                exps.push_back(static_cast<unsigned>(
                    to_ulong_checked(int_from_json(v), "exponent")));
        }
        inst.zsys.emplace(p, std::move(polys), std::move(exps));
        inst.zbox.emplace(p, std::move(box_sets));
        return inst;
    }
    if (j.contains("field")) {
        FqField field = fq_build(int_from_json(j.at("field").at("p")),
                                 static_cast<int>(to_ulong_checked(
                                     int_from_json(j.at("field").at("ell")),
                                     "ell")));
        verify::FqBox box;
        for (const auto& s : j.at("box")) {
            std::vector<FqElem> set;
            for (const auto& v : s)
                set.push_back(field.from_index(
                    to_ulong_checked(int_from_json(v), "element index")));
            box.push_back(std::move(set));
        }
        int nvars = static_cast<int>(box.size());
        std::vector<MultiPoly<FqElem>> polys;
        for (const auto& pj : j.at("polys"))
            polys.push_back(poly_fq_from_json(pj, nvars, field));
        inst.qsys.emplace(field, std::move(polys));
        inst.qbox = std::move(box);
        return inst;
    }
    throw std::invalid_argument("instance needs a 'prime' or 'field' key");
}

struct VerifyArgs {
    std::string instance_path;
    std::string p_str;
    std::string field_str;
    std::vector<std::string> polys;
    std::vector<unsigned> exps;
    std::vector<std::string> boxes;
    std::string caps_csv;
    unsigned random_count = 0;
    std::uint64_t seed = 0;
    int workers = 1;
    std::uint64_t grid_guard = verify::kDefaultGridGuard;
};

VerifyInstance build_instance(const VerifyArgs& args, bool full_grid_default) {
    if (!args.instance_path.empty()) {
        std::ifstream f(args.instance_path);
        if (!f) throw std::invalid_argument("cannot open instance file");
        Json j = Json::parse(f);
        return load_instance_json(j);
    }
    if (args.polys.empty()) throw std::invalid_argument("--poly required");
    VerifyInstance inst;
    if (!args.field_str.empty()) {
        auto parts = parse_int_list(args.field_str);
        if (parts.size() != 2)
            throw std::invalid_argument("--field format is p,ell");
        FqField field = fq_build(
            parts[0],
            static_cast<int>(to_ulong_checked(parts[1], "ell")));
        int nvars = 0;
        std::vector<MultiPoly<Int>> raw;
        for (const auto& text : args.polys) {
            raw.push_back(parse_poly(text));
            nvars = std::max(nvars, raw.back().nvars());
        }
        nvars = std::max(nvars, 1);
        if (args.boxes.size() > 1)
            nvars = std::max(nvars, static_cast<int>(args.boxes.size()));
        std::vector<MultiPoly<FqElem>> polys;
        for (const auto& text : args.polys) {
            MultiPoly<Int> f = parse_poly(text, nvars);
            polys.push_back(f.map_coefficients<FqElem>(
                [&](const Int& c) { return field.from_int(c); }));
        }
        verify::FqBox box;
        if (args.boxes.empty()) {
            if (!full_grid_default)
                throw std::invalid_argument("--box required");
            box = verify::full_grid(field, nvars);
        } else {
            for (const auto& sets :
                 boxes_for_arity(args.boxes, nvars)) {
                std::vector<FqElem> s;
                for (const Int& v : sets)
                    s.push_back(field.from_index(
                        to_ulong_checked(v, "element index")));
                box.push_back(std::move(s));
            }
        }
        inst.qsys.emplace(field, std::move(polys));
        inst.qbox = std::move(box);
        return inst;
    }
    if (args.p_str.empty())
        throw std::invalid_argument("--p or --field required");
    Int p(args.p_str);
    int nvars = 0;
    std::vector<MultiPoly<Int>> raw;
    for (const auto& text : args.polys) {
        raw.push_back(parse_poly(text));
        nvars = std::max(nvars, raw.back().nvars());
    }
    nvars = std::max(nvars, 1);
    if (args.boxes.size() > 1)
        nvars = std::max(nvars, static_cast<int>(args.boxes.size()));
    std::vector<MultiPoly<Int>> polys;
    for (const auto& text : args.polys) polys.push_back(parse_poly(text, nvars));
    std::vector<unsigned> exps = args.exps;
    if (exps.empty()) exps.assign(polys.size(), 1);
    if (exps.size() != polys.size())
        throw std::invalid_argument("one --v per --poly");
    inst.zsys.emplace(p, std::move(polys), std::move(exps));
    inst.zbox.emplace(p, boxes_for_arity(args.boxes, nvars));
    return inst;
}

Output run_verify_rvw2(const VerifyArgs& args) {
    Output out;
    if (args.random_count > 0) {
        std::mt19937_64 rng(args.seed);
        unsigned holds = 0, vacuous = 0, violated = 0;
        for (unsigned i = 0; i < args.random_count; ++i) {
            auto inst = gen::random_rvw2_instance(rng);
            auto rep = verify::rvw2_report(inst.sys, inst.box,
                                           args.workers, args.grid_guard);
            if (rep.verdict == Verdict::HOLDS) ++holds;
            else if (rep.verdict == Verdict::VACUOUS) ++vacuous;
            else ++violated;
        }
        out.report["mode"] = "rvw2-random";
        out.report["instances"] = args.random_count;
        out.report["seed"] = args.seed;
        out.report["holds"] = holds;
        out.report["vacuous"] = vacuous;
        out.report["violated"] = violated;
        Verdict v = violated == 0 ? Verdict::HOLDS : Verdict::VIOLATED;
        out.report["verdict"] = verdict_to_json(v);
        out.summary = "rvw2 random suite: " + std::string(to_string(v));
        out.exit_code = verdict_exit(v);
        return out;
    }
    VerifyInstance inst = build_instance(args, false);
    CountReport rep;
    if (inst.zsys)
        rep = verify::rvw2_report(*inst.zsys, *inst.zbox, args.workers,
                                  args.grid_guard);
    else
        rep = verify::rvw2_report(*inst.qsys, *inst.qbox, args.workers,
                                  args.grid_guard);
    out.report["mode"] = "rvw2";
    Json body = count_report_to_json(rep);
    for (auto& [k, v] : body.items()) out.report[k] = v;
    out.summary = std::string("rvw2: ") + to_string(rep.verdict) +
                  ", count " + rep.count.get_str();
    out.exit_code = verdict_exit(rep.verdict);
    return out;
}

Output run_verify_warning2(const VerifyArgs& args) {
    VerifyArgs full = args;
    full.boxes.clear();
    VerifyInstance inst = build_instance(full, true);
    if (!inst.qsys)
        throw std::invalid_argument("warning2 expects --field (an F_q system)");
    auto rep = verify::rvw2_report(*inst.qsys, *inst.qbox, args.workers,
                                   args.grid_guard);
    Int z = rep.count;
    Int p(static_cast<unsigned long>(inst.qsys->field.p()));
    // the classical claims (p | z, and z = 0 or z >= q^{n-d}) need
    // sum deg P_j < n; the balls-in-bins bound needs no hypothesis
    Int degsum = 0;
    for (const auto& g : inst.qsys->polys) {
        Degree d = g.total_degree();
        if (!d.is_neg_infinity()) degsum += Int(d.value());
    }
    bool hypothesis = degsum < Int(inst.qsys->nvars());
    bool warning_div = mod_floor(z, p) == 0;
    Output out;
    out.report["mode"] = "warning2";
    Json body = count_report_to_json(rep);
    for (auto& [k, v] : body.items()) out.report[k] = v;
    out.report["hypothesis"] = hypothesis;
    Verdict v = rep.verdict;
    if (hypothesis) {
        out.report["count_divisible_by_p"] = warning_div;
        if (v != Verdict::VACUOUS && !warning_div) v = Verdict::VIOLATED;
    }
    out.report["verdict"] = verdict_to_json(v);
    out.summary = std::string("warning2: ") + to_string(v);
    out.exit_code = verdict_exit(v);
    return out;
}

// z_A != 1 under the restricted Chevalley hypothesis.
Output run_verify_chevalley(const VerifyArgs& args) {
    VerifyInstance inst = build_instance(args, true);
    Output out;
    out.report["mode"] = "chevalley";
    Int count, budget, slack = 0;
    if (inst.qsys) {
        count = verify::count_zeros_fq(*inst.qsys, *inst.qbox,
                                       args.workers, args.grid_guard);
        budget = inst.qsys->degree_budget();
        for (const auto& s : *inst.qbox) slack += Int(s.size()) - 1;
    } else {
        count = verify::count_zeros_box(*inst.zsys, *inst.zbox,
                                        args.workers, args.grid_guard);
        budget = inst.zsys->degree_budget();
        for (const auto& s : inst.zbox->sets()) slack += Int(s.size()) - 1;
    }
    bool hypothesis = budget < slack;
    Verdict v = !hypothesis ? Verdict::NOT_APPLICABLE
                            : (count == 1 ? Verdict::VIOLATED : Verdict::HOLDS);
    out.report["count"] = int_to_json(count);
    out.report["degree_budget"] = int_to_json(budget);
    out.report["box_slack"] = int_to_json(slack);
    out.report["hypothesis"] = hypothesis;
    out.report["verdict"] = verdict_to_json(v);
    out.summary = std::string("chevalley: ") + to_string(v);
    out.exit_code = verdict_exit(v);
    return out;
}

Output run_verify_schanuel(const VerifyArgs& args) {
    VerifyInstance inst = build_instance(args, false);
    if (!inst.zsys)
        throw std::invalid_argument("schanuel expects an integer system");
    if (args.caps_csv.empty())
        throw std::invalid_argument("--caps required for schanuel");
    std::vector<Int> caps = parse_int_list(args.caps_csv);
    auto rep = verify::schanuel_box_expand(*inst.zsys, caps, args.workers,
                                           args.grid_guard);
    Output out;
    out.report["mode"] = "schanuel";
    out.report["box_solution_count"] = int_to_json(rep.box_solution_count);
    out.report["hypothesis_split"] = rep.hypothesis_split;
    out.report["hypothesis_boolean"] = rep.hypothesis_boolean;
    out.report["hypothesis_residue"] = rep.hypothesis_residue;
    out.report["verdict_box"] = verdict_to_json(rep.verdict_box);
    out.report["verdict_boolean"] = verdict_to_json(rep.verdict_boolean);
    out.report["verdict_residue"] = verdict_to_json(rep.verdict_residue);
    if (rep.witness_nonzero)
        out.report["witness_nonzero"] = int_vector_to_json(*rep.witness_nonzero);
    if (rep.witness_unit)
        out.report["witness_unit"] = int_vector_to_json(*rep.witness_unit);
    if (rep.witness_boolean)
        out.report["witness_boolean"] =
            int_vector_to_json(*rep.witness_boolean);
    out.report["boolean_cross_check"] = rep.boolean_cross_check;
    Json polys = Json::array();
    for (const auto& f : rep.expanded.polys) polys.push_back(poly_to_json(f));
    out.report["expanded_polys"] = polys;
    Verdict worst = Verdict::NOT_APPLICABLE;
    for (Verdict v :
         {rep.verdict_box, rep.verdict_boolean, rep.verdict_residue}) {
        if (v == Verdict::HOLDS && worst == Verdict::NOT_APPLICABLE)
            worst = Verdict::HOLDS;
        if (v == Verdict::VIOLATED) worst = Verdict::VIOLATED;
    }
    if (!rep.boolean_cross_check) worst = Verdict::VIOLATED;
    out.report["verdict"] = verdict_to_json(worst);
    out.summary = std::string("schanuel: ") + to_string(worst);
    out.exit_code = verdict_exit(worst);
    return out;
}

Output run_verify_alonfuredi(const VerifyArgs& args) {
    VerifyInstance inst = build_instance(args, true);
    CountReport rep;
    if (inst.qsys) {
        if (inst.qsys->polys.size() != 1)
            throw std::invalid_argument("alonfuredi takes a single polynomial");
        rep = verify::alon_furedi_report(inst.qsys->polys[0], *inst.qbox,
                                         args.workers, args.grid_guard);
    } else {
        if (inst.zsys->polys.size() != 1)
            throw std::invalid_argument("alonfuredi takes a single polynomial");
        rep = verify::alon_furedi_report(inst.zsys->polys[0], *inst.zbox,
                                         args.workers, args.grid_guard);
    }
    Output out;
    out.report["mode"] = "alonfuredi";
    Json body = count_report_to_json(rep);
    for (auto& [k, v] : body.items()) out.report[k] = v;
    out.summary = std::string("alonfuredi: ") + to_string(rep.verdict) +
                  ", nonzeros " + rep.count.get_str();
    out.exit_code = verdict_exit(rep.verdict);
    return out;
}

Json group_to_json(const zerosum::GroupSpec& G) {
    Json j;
    j["p"] = int_to_json(G.p());
    j["exps"] = G.exps();
    return j;
}

// Zero-sum instance files: {"group": {"p": 2, "exps": [1,1]}, "seq": [...],
// "box": [[...]], "k": 1, "target": 0, "m": 2, "g": 0, "sets": [[...]]}.
struct ZsInstance {
    std::optional<zerosum::GroupSpec> group;
    std::vector<std::uint64_t> seq;
    std::vector<std::vector<Int>> box;
    std::optional<unsigned> k;
    std::optional<std::uint64_t> target;
    std::optional<Int> m, g;
    std::optional<zerosum::SetSystem> sets;
};

ZsInstance load_zs_instance(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open instance file");
    Json j = Json::parse(f);
    ZsInstance inst;
    if (j.contains("group")) {
        Int p = int_from_json(j["group"].at("p"));
        std::vector<unsigned> exps;
        for (const auto& v : j["group"].at("exps"))
            exps.push_back(static_cast<unsigned>(
                to_ulong_checked(int_from_json(v), "exponent")));
        inst.group.emplace(p, exps);
    }
    if (j.contains("seq"))
        for (const auto& v : j["seq"])
            inst.seq.push_back(to_ulong_checked(int_from_json(v), "entry"));
    if (j.contains("box"))
        for (const auto& s : j["box"]) {
            std::vector<Int> set;
            for (const auto& v : s) set.push_back(int_from_json(v));
            inst.box.push_back(std::move(set));
        }
    if (j.contains("k"))
        inst.k = static_cast<unsigned>(
            to_ulong_checked(int_from_json(j["k"]), "k"));
    if (j.contains("target"))
        inst.target = to_ulong_checked(int_from_json(j["target"]), "target");
    if (j.contains("m")) inst.m = int_from_json(j["m"]);
    if (j.contains("g")) inst.g = int_from_json(j["g"]);
    if (j.contains("sets")) {
        zerosum::SetSystem F;
        for (const auto& s : j["sets"]) {
            std::vector<std::uint32_t> atoms;
            for (const auto& v : s)
                atoms.push_back(static_cast<std::uint32_t>(
                    to_ulong_checked(int_from_json(v), "atom")));
            F.sets.push_back(std::move(atoms));
        }
        inst.sets = std::move(F);
    }
    return inst;
}

Output run_davenport(const std::string& group_str) {
    zerosum::GroupSpec G = parse_group(group_str);
    auto res = zerosum::davenport_constant(G);
    Output out;
    out.report["input"] = Json{{"group", group_to_json(G)}};
    out.report["D"] = int_to_json(res.constant);
    out.report["d"] = int_to_json(G.davenport_lower());
    Json witness = Json::array();
    for (auto e : res.extremal) witness.push_back(group_element_coords(G, e));
    out.report["witness"] = witness;
    out.summary = "D = " + res.constant.get_str();
    return out;
}

struct ZsArgs {
    std::string instance_path;
    std::string group_str;
    std::string seq_csv;
    std::vector<std::string> box_args;
    unsigned k = 1;
    std::uint64_t target = 0;
    std::uint64_t grid_guard = 10000000;
};

struct ZsResolved {
    zerosum::GroupSpec group;
    zerosum::GSequence x;
    std::optional<RestrictedBox> box;
    unsigned k;
    std::uint64_t target;
};

ZsResolved resolve_zs(const ZsArgs& args, bool need_box) {
    if (!args.instance_path.empty()) {
        ZsInstance inst = load_zs_instance(args.instance_path);
        if (!inst.group)
            throw std::invalid_argument("instance needs a 'group' key");
        zerosum::GSequence x(*inst.group, inst.seq);
        std::optional<RestrictedBox> box;
        if (!inst.box.empty())
            box.emplace(inst.group->p(), inst.box);
        else if (need_box)
            throw std::invalid_argument("instance needs a 'box' key");
        return ZsResolved{*inst.group, std::move(x), std::move(box),
                          inst.k.value_or(args.k),
                          inst.target.value_or(args.target)};
    }
    zerosum::GroupSpec G = parse_group(args.group_str);
    zerosum::GSequence x(G, parse_u64_list(args.seq_csv));
    std::optional<RestrictedBox> box;
    if (!args.box_args.empty())
        box.emplace(G.p(), boxes_for_arity(args.box_args,
                                           static_cast<int>(x.length())));
    else if (need_box)
        throw std::invalid_argument("--box required");
    return ZsResolved{std::move(G), std::move(x), std::move(box), args.k,
                      args.target};
}

Json zs_input_echo(const ZsResolved& r) {
    Json in;
    in["group"] = group_to_json(r.group);
    Json seq = Json::array();
    for (auto e : r.x.entries) seq.push_back(e);
    in["seq"] = seq;
    if (r.box) {
        Json box = Json::array();
        for (const auto& s : r.box->sets()) box.push_back(int_vector_to_json(s));
        in["box"] = box;
    }
    return in;
}

Output run_ngsum(const ZsArgs& args, unsigned min_mode_n) {
    Output out;
    if (min_mode_n > 0) {
        // exhaustive minimum of N_0 over all length-n sequences
        zerosum::GroupSpec G = parse_group(args.group_str);
        auto res = zerosum::min_n0_over_sequences(G, min_mode_n);
        auto dav = zerosum::davenport_constant(G);
        Int expected = 1;
        if (Int(min_mode_n) + 1 > dav.constant)
            expected = pow_int(
                2, to_ulong_checked(Int(Int(min_mode_n) + 1 - dav.constant),
                                    "exponent"));
        out.report["mode"] = "ngsum-min";
        out.report["input"] = Json{{"group", group_to_json(G)},
                                   {"n", min_mode_n}};
        out.report["minimum"] = int_to_json(res.minimum);
        out.report["expected"] = int_to_json(expected);
        Json argmin = Json::array();
        for (auto e : res.argmin)
            argmin.push_back(group_element_coords(G, e));
        out.report["argmin"] = argmin;
        Verdict v = res.minimum == expected ? Verdict::HOLDS
                                            : Verdict::VIOLATED;
        out.report["verdict"] = verdict_to_json(v);
        out.summary = std::string("ngsum-min: ") + to_string(v);
        out.exit_code = verdict_exit(v);
        return out;
    }
    ZsResolved r = resolve_zs(args, false);
    auto rep = zerosum::ng_bound_report(r.x, r.target);
    out.report["mode"] = "ngsum";
    out.report["input"] = zs_input_echo(r);
    out.report["target"] = group_element_coords(r.group, r.target);
    Json body = count_report_to_json(rep);
    for (auto& [k, v] : body.items()) out.report[k] = v;
    out.summary = std::string("ngsum: ") + to_string(rep.verdict) + ", N = " +
                  rep.count.get_str();
    out.exit_code = verdict_exit(rep.verdict);
    return out;
}

Output run_gensub(const ZsArgs& args) {
    ZsResolved r = resolve_zs(args, true);
    auto rep = zerosum::generalized_report(r.x, r.target, *r.box,
                                           args.grid_guard);
    Output out;
    out.report["mode"] = "gensub";
    out.report["input"] = zs_input_echo(r);
    out.report["target"] = group_element_coords(r.group, r.target);
    Json body = count_report_to_json(rep.report);
    for (auto& [k, v] : body.items()) out.report[k] = v;
    out.report["chevalley_hypothesis"] = rep.chevalley_hypothesis;
    out.report["count_is_one"] = rep.count_is_one;
    if (rep.nonzero_witness)
        out.report["nonzero_witness"] = int_vector_to_json(*rep.nonzero_witness);
    Verdict v = rep.report.verdict;
    if (rep.chevalley_hypothesis && rep.count_is_one) v = Verdict::VIOLATED;
    out.report["verdict"] = verdict_to_json(v);
    out.summary = std::string("gensub: ") + to_string(v);
    out.exit_code = verdict_exit(v);
    return out;
}

Output run_setsystem(const std::string& instance_path,
                     const std::string& sets_str, Int m, Int g,
                     const std::string& extremal_str) {
    Output out;
    zerosum::SetSystem F;
    if (!extremal_str.empty()) {
        auto parts = parse_u64_list(extremal_str);
        if (parts.size() != 2)
            throw std::invalid_argument("--extremal format is d,m");
        F = zerosum::extremal_setsystem(static_cast<unsigned>(parts[0]),
                                        static_cast<unsigned>(parts[1]));
        Json sets = Json::array();
        for (const auto& s : F.sets) sets.push_back(s);
        out.report["sets"] = sets;
    } else if (!instance_path.empty()) {
        ZsInstance inst = load_zs_instance(instance_path);
        if (!inst.sets)
            throw std::invalid_argument("instance needs a 'sets' key");
        F = *inst.sets;
        if (inst.m) m = *inst.m;
        if (inst.g) g = *inst.g;
    } else {
        F = parse_sets(sets_str);
    }
    auto rep = zerosum::setsystem_report(F, m, g);
    out.report["mode"] = "setsystem";
    out.report["length"] = F.length();
    out.report["max_degree"] = rep.max_degree;
    out.report["prime_power_modulus"] = rep.prime_power_modulus;
    Json body = count_report_to_json(rep.report);
    for (auto& [k, v] : body.items()) out.report[k] = v;
    out.summary = std::string("setsystem: ") + to_string(rep.report.verdict) +
                  ", N = " + rep.report.count.get_str();
    out.exit_code = verdict_exit(rep.report.verdict);
    return out;
}

Output run_egz(unsigned classic_m, const ZsArgs& args) {
    Output out;
    if (classic_m > 0) {
        auto rep = zerosum::egz_classic_verify(classic_m);
        out.report["mode"] = "egz-classic";
        out.report["m"] = classic_m;
        out.report["multisets_checked"] = rep.multisets_checked;
        out.report["all_pass"] = rep.all_pass;
        out.report["extremal_confirmed"] = rep.extremal_confirmed;
        Verdict v = rep.all_pass && rep.extremal_confirmed ? Verdict::HOLDS
                                                           : Verdict::VIOLATED;
        out.report["verdict"] = verdict_to_json(v);
        out.summary = std::string("egz classic: ") + to_string(v);
        out.exit_code = verdict_exit(v);
        return out;
    }
    ZsResolved r = resolve_zs(args, true);
    zerosum::WeightBox A(*r.box);
    auto rep = zerosum::egz_report(r.x, A, r.k, r.target, args.grid_guard);
    out.report["mode"] = "egz";
    out.report["input"] = zs_input_echo(r);
    out.report["k"] = r.k;
    out.report["target"] = group_element_coords(r.group, r.target);
    Json body = count_report_to_json(rep);
    for (auto& [kk, v] : body.items()) out.report[kk] = v;
    out.summary = std::string("egz: ") + to_string(rep.verdict) + ", count " +
                  rep.count.get_str();
    out.exit_code = verdict_exit(rep.verdict);
    return out;
}

Output run_dags(const ZsArgs& args) {
    ZsResolved r = resolve_zs(args, true);
    zerosum::WeightBox A(*r.box);
    auto rep = zerosum::dags_report(r.x, A, args.grid_guard);
    Output out;
    out.report["mode"] = "dags";
    out.report["input"] = zs_input_echo(r);
    out.report["applicable"] = rep.applicable;
    out.report["k"] = int_to_json(rep.exponent_k);
    Json body = count_report_to_json(rep.report);
    for (auto& [k, v] : body.items()) out.report[k] = v;
    out.summary = std::string("dags: ") + to_string(rep.report.verdict);
    out.exit_code = verdict_exit(rep.report.verdict);
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"restricted-variable congruence counting workbench"};
    app.require_subcommand(1);

    std::string json_out;
    app.add_option("--json-out", json_out, "also write the report to a file");

    // mbound
    auto* mbound = app.add_subcommand("mbound", "balls-in-bins minimum product");
    std::string bins_csv;
    std::string balls_str;
    mbound->add_option("--bins", bins_csv, "capacities, comma separated")
        ->required();
    mbound->add_option("--balls", balls_str, "ball count")->required();

    // delta
    auto* delta = app.add_subcommand("delta", "Schanuel-Brink operator");
    std::string delta_p;
    std::vector<std::string> delta_boxes;
    std::string delta_poly;
    unsigned delta_iters = 1;
    delta->add_option("--p", delta_p, "prime")->required();
    delta->add_option("--box", delta_boxes, "allowed values per variable");
    delta->add_option("--poly", delta_poly, "polynomial expression")
        ->required();
    delta->add_option("--iters", delta_iters, "number of applications");

    // verify <mode>
    auto* verify_cmd = app.add_subcommand("verify", "theorem verifiers");
    std::string verify_mode;
    verify_cmd
        ->add_option("mode", verify_mode,
                     "rvw2|warning2|chevalley|brink|schanuel|alonfuredi")
        ->required();
    VerifyArgs vargs;
    verify_cmd->add_option("--instance", vargs.instance_path,
                           "instance JSON file");
    verify_cmd->add_option("--p", vargs.p_str, "prime");
    verify_cmd->add_option("--field", vargs.field_str, "p,ell");
    verify_cmd->add_option("--poly", vargs.polys, "polynomial (repeatable)");
    verify_cmd->add_option("--v", vargs.exps, "exponent v_j (repeatable)");
    verify_cmd->add_option("--box", vargs.boxes,
                           "allowed values per variable (repeatable)");
    verify_cmd->add_option("--caps", vargs.caps_csv,
                           "box caps b_i for schanuel mode");
    verify_cmd->add_option("--random", vargs.random_count,
                           "run N seeded random instances");
    verify_cmd->add_option("--seed", vargs.seed, "64-bit seed");
    verify_cmd->add_option("--workers", vargs.workers, "worker threads");
    verify_cmd->add_option("--grid-guard", vargs.grid_guard,
                           "grid size limit");

    // davenport
    auto* dav = app.add_subcommand("davenport", "Davenport constant");
    std::string dav_group;
    dav->add_option("--group", dav_group, "p:v1,v2,...")->required();

    // ngsum
    auto* ngsum = app.add_subcommand("ngsum", "g-sum subsequence count");
    ZsArgs ng_args;
    ngsum->add_option("--instance", ng_args.instance_path, "instance JSON");
    ngsum->add_option("--group", ng_args.group_str, "p:v1,v2,...");
    ngsum->add_option("--seq", ng_args.seq_csv,
                      "encoded elements, comma separated");
    ngsum->add_option("--target", ng_args.target, "encoded target element");
    unsigned ng_min_n = 0;
    ngsum->add_option("--min", ng_min_n,
                      "sweep all length-n sequences for the minimum N_0");

    // gensub
    auto* gensub = app.add_subcommand("gensub", "weighted subsequence count");
    ZsArgs gs_args;
    gensub->add_option("--instance", gs_args.instance_path, "instance JSON");
    gensub->add_option("--group", gs_args.group_str, "p:v1,v2,...");
    gensub->add_option("--seq", gs_args.seq_csv, "encoded elements");
    gensub->add_option("--box", gs_args.box_args, "weight sets (repeatable)");
    gensub->add_option("--target", gs_args.target, "encoded target element");
    gensub->add_option("--grid-guard", gs_args.grid_guard,
                       "weight grid size limit");

    // setsystem
    auto* setsys = app.add_subcommand("setsystem", "union cardinality counts");
    std::string ss_instance, ss_sets, ss_extremal;
    std::string ss_m = "2", ss_g = "0";
    setsys->add_option("--instance", ss_instance, "instance JSON");
    setsys->add_option("--sets", ss_sets, "sets as a;b;c with atoms x,y");
    setsys->add_option("--m", ss_m, "modulus");
    setsys->add_option("--g", ss_g, "target residue");
    setsys->add_option("--extremal", ss_extremal,
                       "build the extremal system d,m");

    // egz
    auto* egz = app.add_subcommand("egz", "EGZ-type counts");
    unsigned egz_classic = 0;
    ZsArgs egz_args;
    egz->add_option("--classic", egz_classic,
                    "verify the classical theorem for Z/m");
    egz->add_option("--instance", egz_args.instance_path, "instance JSON");
    egz->add_option("--group", egz_args.group_str, "p:v1,v2,...");
    egz->add_option("--seq", egz_args.seq_csv, "encoded elements");
    egz->add_option("--box", egz_args.box_args, "weight sets (repeatable)");
    egz->add_option("--k", egz_args.k, "support divisibility power");
    egz->add_option("--target", egz_args.target, "encoded target element");
    egz->add_option("--grid-guard", egz_args.grid_guard,
                    "weight grid size limit");

    // dags
    auto* dags = app.add_subcommand("dags", "generalized zero-sum existence");
    ZsArgs dg_args;
    dags->add_option("--instance", dg_args.instance_path, "instance JSON");
    dags->add_option("--group", dg_args.group_str, "p:v1,v2,...");
    dags->add_option("--seq", dg_args.seq_csv, "encoded elements");
    dags->add_option("--box", dg_args.box_args, "weight sets (repeatable)");
    dags->add_option("--grid-guard", dg_args.grid_guard,
                     "weight grid size limit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        Output out;
        if (*mbound) {
            out = run_mbound(bins_csv, Int(balls_str));
        } else if (*delta) {
            out = run_delta(Int(delta_p), delta_boxes, delta_poly, delta_iters);
        } else if (*verify_cmd) {
            if (verify_mode == "rvw2")
                out = run_verify_rvw2(vargs);
            else if (verify_mode == "warning2")
                out = run_verify_warning2(vargs);
            else if (verify_mode == "chevalley" || verify_mode == "brink")
                out = run_verify_chevalley(vargs);
            else if (verify_mode == "schanuel")
                out = run_verify_schanuel(vargs);
            else if (verify_mode == "alonfuredi")
                out = run_verify_alonfuredi(vargs);
            else
                throw std::invalid_argument("unknown verify mode: " +
                                            verify_mode);
        } else if (*dav) {
            out = run_davenport(dav_group);
        } else if (*ngsum) {
            out = run_ngsum(ng_args, ng_min_n);
        } else if (*gensub) {
            out = run_gensub(gs_args);
        } else if (*setsys) {
            out = run_setsystem(ss_instance, ss_sets, Int(ss_m), Int(ss_g),
                                ss_extremal);
        } else if (*egz) {
            out = run_egz(egz_classic, egz_args);
        } else if (*dags) {
            out = run_dags(dg_args);
        }
        emit(out, json_out);
        return out.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
