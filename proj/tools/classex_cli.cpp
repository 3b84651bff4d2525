// Command-line surface: group-spec queries, class algebra, character-table
// tools, and the verification suite, with reproducible JSON reports.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "classex/chartable.hpp"
#include "classex/classes.hpp"
#include "classex/constructions.hpp"
#include "classex/suite.hpp"

using namespace classex;

namespace {

struct GlobalOpts {
  std::string data_dir;
  std::uint64_t enumeration_cap = kDefaultEnumerationCap;
  std::string config_path;
};

std::string default_data_dir() {
  if (const char* env = std::getenv("CLASSEX_DATA")) return env;
#ifdef CLASSEX_DATA_DIR
  return CLASSEX_DATA_DIR;
#else
  return "data";
#endif
}

void apply_config(GlobalOpts& g) {
  if (g.config_path.empty()) return;
  std::ifstream f(g.config_path);
  if (!f) throw error("cannot open config file: " + g.config_path);
  nlohmann::json doc;
  f >> doc;
  if (doc.contains("enumeration_cap"))
    g.enumeration_cap = doc["enumeration_cap"].get<std::uint64_t>();
  if (doc.contains("data_dir") && g.data_dir == default_data_dir())
    g.data_dir = doc["data_dir"].get<std::string>();
}

std::string file_checksum(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) return "missing";
  std::ostringstream ss;
  ss << f.rdbuf();
  std::string bytes = ss.str();
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv64:%016llx",
                static_cast<unsigned long long>(fnv1a(bytes.data(), bytes.size())));
  return buf;
}

nlohmann::json data_checksums(const std::string& data_dir) {
  nlohmann::json out;
  for (const auto& [name, entry] : named_registry()) {
    std::string p = data_dir + "/generators/" + entry.file;
    std::ifstream probe(p);
    if (probe) out["generators/" + entry.file] = file_checksum(p);
  }
  for (const char* t : {"Frob21", "Sym4", "Alt5", "PGammaL2_8", "M11",
                        "SL2_32.5", "Sz8.3", "J1"}) {
    std::string p = data_dir + "/tables/" + std::string(t) + ".json";
    std::ifstream probe(p);
    if (probe) out["tables/" + std::string(t) + ".json"] = file_checksum(p);
  }
  return out;
}

nlohmann::json report_envelope(const std::string& data_dir) {
  return {{"version", kVersion}, {"data_checksums", data_checksums(data_dir)}};
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

void emit(const nlohmann::json& doc, const std::string& json_path, bool human,
          const std::string& human_text) {
  if (!json_path.empty()) {
    std::ofstream f(json_path);
    f << doc.dump(1) << "\n";
  }
  if (human) std::cout << human_text;
  if (json_path.empty() && !human) std::cout << doc.dump(1) << "\n";
}

template <class P>
int run_classes(const GlobalOpts& g, const std::string& spec,
                const std::string& json_out) {
  auto grp = build_spec<P>(spec, g.data_dir);
  ClassPartition<P> part(grp, std::min<std::uint64_t>(g.enumeration_cap,
                                                      kClassMapLimit));
  nlohmann::json doc = report_envelope(g.data_dir);
  doc["group"] = spec;
  doc["order"] = grp.order().str();
  doc["classes"] = nlohmann::json::array();
  std::ostringstream tab;
  tab << "group " << spec << "  order " << grp.order() << "\n";
  tab << "class  size  order  inverse  rep\n";
  for (std::size_t c = 0; c < part.num_classes(); ++c) {
    const auto& ci = part.info(c);
    doc["classes"].push_back(
        {{"name", ci.name},
         {"size", ci.size},
         {"order", ci.element_order},
         {"inverse", part.name(ci.inverse_class)},
         {"rep", cycle_string(part.representative(c))}});
    tab << ci.name << "  " << ci.size << "  " << ci.element_order << "  "
        << part.name(ci.inverse_class) << "  "
        << cycle_string(part.representative(c)) << "\n";
  }
  emit(doc, json_out, json_out.empty(), tab.str());
  return 0;
}

template <class P>
NormalSubset<P> subset_from_names(const ClassPartition<P>& part,
                                  const std::vector<std::string>& names) {
  NormalSubset<P> k(part);
  for (const auto& n : names) {
    auto c = part.class_by_name(n);
    if (!c) throw error("no class named " + n);
    k.add_class(*c);
  }
  return k;
}

template <class P>
int run_dk(const GlobalOpts& g, const std::string& spec,
           const std::string& classes_csv, const std::string& json_out) {
  auto grp = build_spec<P>(spec, g.data_dir);
  ClassPartition<P> part(grp);
  auto k = subset_from_names(part, split_csv(classes_csv));
  auto dk = rational_closure(part, k);
  nlohmann::json doc = report_envelope(g.data_dir);
  doc["group"] = spec;
  doc["K"] = k.class_names();
  doc["D_K"] = dk.class_names();
  doc["D_K_element_count"] = dk.element_count();
  std::ostringstream tab;
  tab << "D_K = ";
  for (const auto& n : dk.class_names()) tab << n << " ";
  tab << "(" << dk.element_count() << " elements)\n";
  emit(doc, json_out, json_out.empty(), tab.str());
  return 0;
}

template <class P>
int run_square(const GlobalOpts& g, const std::string& spec,
               const std::string& classes_csv, const std::string& coset_of,
               const std::string& json_out) {
  auto grp = build_spec<P>(spec, g.data_dir);
  ClassPartition<P> part(grp);
  nlohmann::json doc = report_envelope(g.data_dir);
  doc["group"] = spec;
  std::ostringstream tab;
  if (!coset_of.empty()) {
    auto l = build_spec<P>(coset_of, g.data_dir);
    Perm<P> y = Perm<P>::identity(grp.degree());
    for (std::size_t c = 0; c < part.num_classes(); ++c)
      if (!l.contains(part.representative(c))) {
        y = part.representative(c);
        break;
      }
    auto view = coset_structure(part, l, y);
    auto names = [&](const std::vector<std::size_t>& v) {
      std::vector<std::string> out;
      for (auto c : v) out.push_back(part.name(c));
      return out;
    };
    doc["coset_of"] = coset_of;
    doc["y"] = cycle_string(y);
    doc["coset_classes"] = names(view.coset_classes);
    doc["square_classes"] = names(view.square_classes);
    doc["square_equals_y2L"] = view.square_equals_y2L;
    doc["D_K_equals_complement_of_L"] = view.dk_equals_complement;
    tab << "coset yL with y = " << cycle_string(y) << "\n(yL)^2 = y^2 L: "
        << (view.square_equals_y2L ? "yes" : "no")
        << "\nD_{yL} = G minus L: "
        << (view.dk_equals_complement ? "yes" : "no") << "\n";
    emit(doc, json_out, json_out.empty(), tab.str());
    return view.square_equals_y2L && view.dk_equals_complement ? 0 : 1;
  }
  auto k = subset_from_names(part, split_csv(classes_csv));
  auto sq = normal_set_product(part, k, k);
  auto verdict = expansion_check(part, k);
  doc["K"] = k.class_names();
  doc["K_squared"] = sq.class_names();
  doc["expansion_holds"] = verdict.holds;
  if (verdict.violating_class)
    doc["violating_class"] = part.name(*verdict.violating_class);
  tab << "K^2 = ";
  for (const auto& n : sq.class_names()) tab << n << " ";
  tab << "\nK^2 inside D_K: " << (verdict.holds ? "yes" : "no") << "\n";
  if (verdict.violating_class)
    tab << "violating class: " << part.name(*verdict.violating_class) << "\n";
  emit(doc, json_out, json_out.empty(), tab.str());
  return verdict.holds ? 0 : 1;
}

template <class P>
int run_audit(const GlobalOpts& g, const std::string& spec,
              const std::string& predicate, const std::string& json_out) {
  auto grp = build_spec<P>(spec, g.data_dir);
  ClassPartition<P> part(grp);
  AuditOptions opt;
  if (predicate == "expansion" || predicate.empty()) {
    opt.predicate = AuditPredicate::Expansion;
  } else if (predicate == "square-set") {
    opt.predicate = AuditPredicate::SquareSet;
  } else if (predicate.rfind("power-union:", 0) == 0) {
    opt.predicate = AuditPredicate::PowerUnion;
    opt.power_n = std::stoull(predicate.substr(12));
  } else if (predicate.rfind("p-power:", 0) == 0) {
    opt.predicate = AuditPredicate::PPower;
    opt.prime_p = std::stoull(predicate.substr(8));
  } else {
    throw parse_error("unknown predicate: " + predicate);
  }
  auto report = odd_subset_audit(part, opt);
  nlohmann::json doc = report_envelope(g.data_dir);
  doc["group"] = spec;
  doc["predicate"] = report.predicate;
  doc["satisfying_subsets"] = nlohmann::json::array();
  for (const auto& e : report.satisfying)
    doc["satisfying_subsets"].push_back({{"classes", e.classes},
                                         {"span_order", e.span_order.str()},
                                         {"soluble", e.soluble}});
  doc["violations"] = report.violations;
  std::ostringstream tab;
  tab << "audit " << spec << " predicate " << report.predicate << "\n";
  for (const auto& e : report.satisfying) {
    tab << "K = {";
    for (const auto& n : e.classes) tab << n << ",";
    tab << "} span order " << e.span_order
        << (e.soluble ? " soluble" : " NOT SOLUBLE") << "\n";
  }
  tab << (report.violations.empty() ? "no non-soluble spans\n"
                                    : "NON-SOLUBLE SPAN FOUND\n");
  emit(doc, json_out, json_out.empty(), tab.str());
  return report.violations.empty() ? 0 : 1;
}

template <class P>
int run_probe(const GlobalOpts& g, const std::string& spec,
              const std::string& cls, const std::string& json_out) {
  auto grp = build_spec<P>(spec, g.data_dir);
  ClassPartition<P> part(grp, std::min<std::uint64_t>(g.enumeration_cap,
                                                      kClassMapLimit));
  auto c = part.class_by_name(cls);
  if (!c) throw error("no class named " + cls);
  auto probe = involution_coset_probe(part, *c);
  nlohmann::json doc = report_envelope(g.data_dir);
  doc["group"] = spec;
  doc["class"] = cls;
  doc["even_order_in_square"] = probe.even_order_in_square;
  if (probe.even_witness) doc["even_order_class"] = *probe.even_witness;
  doc["order4_witnesses"] = nlohmann::json::array();
  std::ostringstream tab;
  tab << "probe " << spec << " class " << cls << "\n(i) C*C has even order: "
      << (probe.even_order_in_square ? "yes" : "no") << "\n";
  for (const auto& [t, w] : probe.order4_witnesses) {
    doc["order4_witnesses"].push_back(
        {{"involution_class", t},
         {"witness", w ? nlohmann::json(*w) : nlohmann::json(nullptr)}});
    tab << "(ii) t in " << t << ": "
        << (w ? "|t*d| = 4 with d = " + *w : "no witness") << "\n";
  }
  emit(doc, json_out, json_out.empty(), tab.str());
  return 0;
}

int run_ctbl(const GlobalOpts& g, const std::string& sub,
             const std::string& file, const std::vector<std::string>& args,
             const std::string& json_out) {
  nlohmann::json doc = report_envelope(g.data_dir);
  doc["file"] = file;
  std::ostringstream tab;
  auto t = CharacterTable::load_file(file);
  auto class_index = [&](const std::string& s) -> std::size_t {
    if (auto c = t.class_by_name(s)) return *c;
    return static_cast<std::size_t>(std::stoull(s));
  };
  if (sub == "check") {
    doc["name"] = t.name();
    doc["order"] = t.order();
    doc["classes"] = t.num_classes();
    doc["valid"] = true;
    tab << "table " << t.name() << ": " << t.num_classes()
        << " classes, order " << t.order() << ", orthogonality verified\n";
    emit(doc, json_out, json_out.empty(), tab.str());
    return 0;
  }
  if (sub == "triple") {
    if (args.size() != 3) throw parse_error("ctbl triple needs i j k");
    auto i = class_index(args[0]), j = class_index(args[1]),
         k = class_index(args[2]);
    BigInt coeff = t.class_mult_coefficient(i, j, k);
    doc["i"] = t.cls(i).name;
    doc["j"] = t.cls(j).name;
    doc["k"] = t.cls(k).name;
    doc["coefficient"] = coeff.str();
    doc["nonempty"] = coeff > 0;
    tab << "coefficient(" << t.cls(i).name << "," << t.cls(j).name << ","
        << t.cls(k).name << ") = " << coeff << "\n";
    emit(doc, json_out, json_out.empty(), tab.str());
    return 0;
  }
  if (sub == "hj") {
    if (args.size() != 3) throw parse_error("ctbl hj needs a b c");
    auto a = class_index(args[0]), b = class_index(args[1]),
         c = class_index(args[2]);
    bool hj = t.hj_test(a, b, c);
    doc["result"] = hj;
    tab << "hj(" << t.cls(a).name << "," << t.cls(b).name << ","
        << t.cls(c).name << ") = " << (hj ? "true" : "false") << "\n";
    emit(doc, json_out, json_out.empty(), tab.str());
    return hj ? 0 : 1;
  }
  throw parse_error("unknown ctbl subcommand: " + sub);
}

int run_paper_suite(const GlobalOpts& g, const std::string& tier,
                    std::uint64_t seed, const std::string& json_out) {
  SuiteContext ctx;
  ctx.data_dir = g.data_dir;
  ctx.seed = seed;
  ctx.enumeration_cap = g.enumeration_cap;
  auto report = run_suite(tier, ctx);
  nlohmann::json doc = report_envelope(g.data_dir);
  doc.update(to_json(report));
  std::ostringstream tab;
  tab << "paper suite, tier " << tier << "\n";
  for (const auto& c : report.checks) {
    tab << "  [" << c.status_str() << "] " << c.id << " (" << c.elapsed_ms
        << " ms)\n";
    if (c.status != CheckStatus::Pass)
      for (const auto& [k, v] : c.witnesses)
        tab << "      " << k << ": " << v << "\n";
  }
  emit(doc, json_out, true, tab.str());
  return report.all_green() ? 0 : 1;
}

template <class F>
int dispatch_width(std::size_t degree, F&& f) {
  if (degree <= 256) return f(std::uint8_t{});
  if (degree <= 65536) return f(std::uint16_t{});
  throw error("degree too large");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-group class-expansion toolkit"};
  app.require_subcommand(1);
  GlobalOpts g;
  g.data_dir = default_data_dir();
  app.add_option("--data", g.data_dir, "data directory");
  app.add_option("--config", g.config_path, "JSON config file");
  app.add_option("--cap", g.enumeration_cap, "enumeration cap");

  std::string spec, classes_csv, coset_of, json_out, predicate, cls_name;
  std::string ctbl_sub, ctbl_file;
  std::vector<std::string> ctbl_args;
  std::string tier = "fast";
  std::uint64_t seed = 0;

  auto* c_classes = app.add_subcommand("classes", "print the class partition");
  c_classes->add_option("spec", spec)->required();
  c_classes->add_option("--json", json_out);

  auto* c_dk = app.add_subcommand("dk", "rational closure of class unions");
  c_dk->add_option("spec", spec)->required();
  c_dk->add_option("--classes", classes_csv)->required();
  c_dk->add_option("--json", json_out);

  auto* c_sq = app.add_subcommand("square", "K^2 and the expansion verdict");
  c_sq->add_option("spec", spec)->required();
  c_sq->add_option("--classes", classes_csv);
  c_sq->add_option("--coset-of", coset_of);
  c_sq->add_option("--json", json_out);

  auto* c_audit = app.add_subcommand("audit", "odd-class subset audit");
  c_audit->add_option("spec", spec)->required();
  c_audit->add_option("--predicate", predicate);
  c_audit->add_option("--json", json_out);

  auto* c_ctbl = app.add_subcommand("ctbl", "character table tools");
  c_ctbl->add_option("sub", ctbl_sub)->required();
  c_ctbl->add_option("file", ctbl_file)->required();
  c_ctbl->add_option("args", ctbl_args);
  c_ctbl->add_option("--json", json_out);

  auto* c_suite = app.add_subcommand("paper-suite", "run the verification suite");
  c_suite->add_option("--tier", tier)->check(CLI::IsMember({"fast", "full", "slow"}));
  c_suite->add_option("--seed", seed);
  c_suite->add_option("--json", json_out);

  auto* c_probe = app.add_subcommand("probe", "involution coset probe");
  c_probe->add_option("spec", spec)->required();
  c_probe->add_option("--class", cls_name)->required();
  c_probe->add_option("--json", json_out);

  try {
    app.parse(argc, argv);
    apply_config(g);
    if (c_classes->parsed())
      return dispatch_width(spec_degree(spec, g.data_dir), [&](auto w) {
        return run_classes<decltype(w)>(g, spec, json_out);
      });
    if (c_dk->parsed())
      return dispatch_width(spec_degree(spec, g.data_dir), [&](auto w) {
        return run_dk<decltype(w)>(g, spec, classes_csv, json_out);
      });
    if (c_sq->parsed())
      return dispatch_width(spec_degree(spec, g.data_dir), [&](auto w) {
        return run_square<decltype(w)>(g, spec, classes_csv, coset_of, json_out);
      });
    if (c_audit->parsed())
      return dispatch_width(spec_degree(spec, g.data_dir), [&](auto w) {
        return run_audit<decltype(w)>(g, spec, predicate, json_out);
      });
    if (c_ctbl->parsed())
      return run_ctbl(g, ctbl_sub, ctbl_file, ctbl_args, json_out);
    if (c_suite->parsed()) return run_paper_suite(g, tier, seed, json_out);
    if (c_probe->parsed())
      return dispatch_width(spec_degree(spec, g.data_dir), [&](auto w) {
        return run_probe<decltype(w)>(g, spec, cls_name, json_out);
      });
    return 2;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
