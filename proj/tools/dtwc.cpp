#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "dtwc/catalog.hpp"
#include "dtwc/fforacle.hpp"
#include "dtwc/invariants.hpp"
#include "dtwc/lattice.hpp"
#include "dtwc/series.hpp"
#include "dtwc/wallcross.hpp"

namespace {

using namespace dtwc;

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitBudget = 3;

struct BadInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BadInput("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// "1,2" or "[1,2]" or "(1,2)"
KClass parse_class(std::string s) {
  for (char& c : s)
    if (c == '[' || c == ']' || c == '(' || c == ')') c = ' ';
  KClass out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      out.push_back(std::stoll(tok));
    } catch (const std::exception&) {
      throw BadInput("cannot parse class coordinate: " + tok);
    }
  }
  if (out.empty()) throw BadInput("empty class");
  return out;
}

std::vector<std::string> split_items(std::string s) {
  for (char& c : s)
    if (c == '|') c = ';';  // '|' accepted as a shell-friendly alternative
  std::vector<std::string> items;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ';'))
    if (!tok.empty()) items.push_back(tok);
  return items;
}

// "(0,1);(1,0);(1,0)"
std::vector<KClass> parse_parts(const std::string& s) {
  std::vector<KClass> parts;
  for (const auto& tok : split_items(s)) parts.push_back(parse_class(tok));
  if (parts.empty()) throw BadInput("no parts given");
  return parts;
}

// "1>2;2>3"
std::vector<std::pair<int, int>> parse_tree(const std::string& s) {
  std::vector<std::pair<int, int>> edges;
  for (const auto& tok : split_items(s)) {
    auto gt = tok.find('>');
    if (gt == std::string::npos) throw BadInput("bad tree edge: " + tok);
    edges.emplace_back(std::stoi(tok.substr(0, gt)),
                       std::stoi(tok.substr(gt + 1)));
  }
  return edges;
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
  return out;
}

NumericalContext load_context(const std::string& path) {
  auto ctx = context_from_json(slurp(path));
  if (!ctx) throw BadInput("cannot parse context JSON: " + path);
  return *ctx;
}

InvariantTable load_table(const std::string& path) {
  auto t = table_from_json(slurp(path));
  if (!t) throw BadInput("cannot parse table JSON: " + path);
  return *t;
}

Quiver load_quiver_arg(const std::string& arg) {
  if (arg.rfind("loops:", 0) == 0) {
    int m = std::stoi(arg.substr(6));
    return Quiver::loops(m);
  }
  auto q = quiver_from_json(slurp(arg));
  if (!q) throw BadInput("cannot parse quiver JSON: " + arg);
  return *q;
}

void emit_value(const std::string& format, const Rational& v) {
  if (format == "json")
    std::cout << nlohmann::ordered_json{{"value", to_string(v)}}.dump()
              << "\n";
  else
    std::cout << to_string(v) << "\n";
}

double budget_from_env(double fallback) {
  if (const char* env = std::getenv("DTWC_BUDGET")) {
    try {
      return std::stod(env);
    } catch (const std::exception&) {
    }
  }
  return fallback;
}

int run(int argc, char** argv) {
  CLI::App app{
      "dtwc: exact wall-crossing coefficients, invariant transforms and "
      "counting oracles for quivers and abstract lattices"};
  app.require_subcommand(1);
  std::string format = "table";
  app.add_option("--format", format, "output format: json|table")
      ->check(CLI::IsMember({"json", "table"}));

  // ------------------------------------------------------------- quiver
  auto* quiver_cmd = app.add_subcommand("quiver", "quiver utilities");
  quiver_cmd->require_subcommand(1);
  auto* quiver_info = quiver_cmd->add_subcommand("info", "describe a quiver");
  std::string quiver_path;
  quiver_info->add_option("file", quiver_path, "quiver JSON or loops:<m>")
      ->required();
  quiver_info->callback([&]() {
    Quiver q = load_quiver_arg(quiver_path);
    EulerData ed = EulerData::from_quiver(q);
    bool chibar_zero = true;
    for (const auto& row : ed.chi_bar)
      for (long long x : row)
        if (x != 0) chibar_zero = false;
    if (format == "json") {
      nlohmann::ordered_json j;
      j["vertices"] = q.vertices;
      j["edge-count"] = q.edges.size();
      j["chi_hat"] = *ed.chi_hat;
      j["chi_bar"] = ed.chi_bar;
      j["chi_bar_zero"] = chibar_zero;
      std::cout << j.dump() << "\n";
    } else {
      std::cout << "vertices: " << q.vertices.size()
                << "  edges: " << q.edges.size()
                << "  chi_bar " << (chibar_zero ? "== 0" : "!= 0") << "\n";
    }
  });

  // -------------------------------------------------------------- coeff
  auto* coeff = app.add_subcommand("coeff", "wall-crossing coefficients");
  std::string which, ctx_path, parts_str, from_name, to_name, tree_str;
  coeff->add_option("kind", which, "S|U|V")->required();
  coeff->add_option("--context", ctx_path, "context JSON")->required();
  coeff->add_option("--parts", parts_str, "e.g. \"(0,1);(1,0)\"")->required();
  coeff->add_option("--from", from_name, "stability tau")->required();
  coeff->add_option("--to", to_name, "stability tau-tilde")->required();
  coeff->add_option("--tree", tree_str, "V only: edges \"1>2;2>3\"");
  coeff->callback([&]() {
    NumericalContext ctx = load_context(ctx_path);
    auto parts = parse_parts(parts_str);
    const auto& tau = ctx.stability(from_name);
    const auto& tau_tilde = ctx.stability(to_name);
    if (which == "S") {
      emit_value(format, Rational(coeff_S(ctx, parts, tau, tau_tilde)));
    } else if (which == "U") {
      emit_value(format, coeff_U(ctx, parts, tau, tau_tilde));
    } else if (which == "V") {
      auto edges = parse_tree(tree_str);
      emit_value(format, coeff_V(ctx, (int)parts.size(), edges, parts, tau,
                                 tau_tilde));
    } else {
      throw BadInput("coeff kind must be S, U or V");
    }
  });

  // ---------------------------------------------------------- transform
  auto* tr = app.add_subcommand("transform", "invariant transforms");
  std::string t_ctx, t_table, t_from, t_to, t_target, law = "wallcross";
  int max_parts = 6;
  bool unsigned_mode = false;
  tr->add_option("--context", t_ctx, "context JSON")->required();
  tr->add_option("--table", t_table, "invariant table JSON")->required();
  tr->add_option("--from", t_from, "stability the table is taken at");
  tr->add_option("--to", t_to, "target stability (wall-crossing laws)");
  tr->add_option("--target", t_target, "class, e.g. \"[1,1]\"");
  tr->add_option("--law", law,
                 "wallcross|vform|pair|bps|dtbar (default wallcross)")
      ->check(CLI::IsMember({"wallcross", "vform", "pair", "bps", "dtbar"}));
  tr->add_flag("--unsigned", unsigned_mode, "drop the sign factors");
  tr->add_option("--max-parts", max_parts, "decomposition part cap");
  tr->callback([&]() {
    NumericalContext ctx = load_context(t_ctx);
    InvariantTable table = load_table(t_table);
    if (law == "bps") {
      std::cout << table_to_json(bps_from_dt(table)) << "\n";
      return;
    }
    if (law == "dtbar") {
      std::cout << table_to_json(dt_from_bps(table)) << "\n";
      return;
    }
    if (t_target.empty()) throw BadInput("--target required for this law");
    KClass target = parse_class(t_target);
    if (law == "pair") {
      if (t_from.empty()) throw BadInput("--from required");
      PairTransformOptions opt;
      opt.signed_mode = !unsigned_mode;
      emit_value(format, pair_transform(ctx, table, ctx.stability(t_from),
                                        target, opt));
      return;
    }
    if (t_from.empty() || t_to.empty())
      throw BadInput("--from and --to required");
    TransformOptions opt;
    opt.max_parts = max_parts;
    opt.unsigned_mode = unsigned_mode;
    auto res = (law == "vform")
                   ? transform_vform(ctx, table.entries, ctx.stability(t_from),
                                     ctx.stability(t_to), target, opt)
                   : transform(ctx, table.entries, ctx.stability(t_from),
                               ctx.stability(t_to), target, opt);
    if (res.truncated)
      throw std::domain_error("transform: budget exceeded (part cap)");
    emit_value(format, res.value);
  });

  // ------------------------------------------------------------ catalog
  auto* cat = app.add_subcommand("catalog", "hardcoded worked examples");
  cat->require_subcommand(1);
  auto* cat_list = cat->add_subcommand("list", "list entries");
  cat_list->callback([&]() {
    if (format == "json") {
      auto arr = nlohmann::ordered_json::array();
      for (const auto& e : catalog::list())
        arr.push_back({{"name", e.name}, {"source", e.source}});
      std::cout << arr.dump() << "\n";
    } else {
      for (const auto& e : catalog::list())
        std::cout << e.name << "  --  " << e.source << "\n";
    }
  });
  auto* cat_verify = cat->add_subcommand("verify", "verify one entry");
  std::string entry_name;
  int order = 6;
  cat_verify->add_option("name", entry_name, "entry name")->required();
  cat_verify->add_option("--order", order, "series order / per-variable cap");
  cat_verify->callback([&]() {
    auto rep = catalog::verify(entry_name, order);
    std::cout << catalog::report_to_json(rep) << "\n";
    if (!rep.ok()) throw std::runtime_error("catalog verification mismatch");
  });

  // ------------------------------------------------------------- oracle
  auto* oracle = app.add_subcommand("oracle", "finite-field counting oracle");
  oracle->require_subcommand(1);
  auto* ffcount = oracle->add_subcommand(
      "ffcount", "count stable framed representations over finite fields");
  std::string o_quiver, o_dim, o_frame, o_fields = "2,3,4,5,7,8,9",
              o_mu = "mu0";
  int threads = 1;
  double budget = 1e8;
  ffcount->add_option("--quiver", o_quiver, "quiver JSON file or loops:<m>")
      ->required();
  ffcount->add_option("--dim", o_dim, "dimension vector d")->required();
  ffcount->add_option("--frame", o_frame, "framing vector e")->required();
  ffcount->add_option("--fields", o_fields, "field sizes (default 2,3,4,5,7,8,9)");
  ffcount->add_option("--mu", o_mu, "stability (mu0 only for now)");
  ffcount->add_option("--threads", threads, "field samples in parallel");
  ffcount->add_option("--budget", budget, "max raw states per sample");
  ffcount->callback([&]() {
    Quiver q = load_quiver_arg(o_quiver);
    KClass d = parse_class(o_dim), e = parse_class(o_frame);
    if (o_mu != "mu0") throw BadInput("oracle currently exposes mu0 only");
    WeakStability mu = WeakStability::trivial();
    OracleBudget ob;
    ob.max_states = budget_from_env(budget);
    auto res = euler_characteristic(q, d, e, mu, parse_int_list(o_fields), ob,
                                    threads);
    std::cout << count_result_to_json(res) << "\n";
  });

  // ------------------------------------------------------------- series
  auto* ser = app.add_subcommand("series", "truncated series operations");
  ser->require_subcommand(1);
  std::string s_a, s_b;
  auto* ser_mul = ser->add_subcommand("mul", "multiply two series");
  ser_mul->add_option("--a", s_a, "series JSON")->required();
  ser_mul->add_option("--b", s_b, "series JSON")->required();
  ser_mul->callback([&]() {
    auto a = series_from_json(slurp(s_a)), b = series_from_json(slurp(s_b));
    if (!a || !b) throw BadInput("cannot parse series JSON");
    std::cout << series_to_json(*a * *b) << "\n";
  });
  std::string s_in;
  auto* ser_exp = ser->add_subcommand("exp", "exponential of a series");
  ser_exp->add_option("--input", s_in, "series JSON")->required();
  ser_exp->callback([&]() {
    auto a = series_from_json(slurp(s_in));
    if (!a) throw BadInput("cannot parse series JSON");
    std::cout << series_to_json(series_exp(*a)) << "\n";
  });
  auto* ser_log = ser->add_subcommand("log", "logarithm of a series");
  ser_log->add_option("--input", s_in, "series JSON")->required();
  ser_log->callback([&]() {
    auto a = series_from_json(slurp(s_in));
    if (!a) throw BadInput("cannot parse series JSON");
    std::cout << series_to_json(series_log(*a)) << "\n";
  });
  std::string s_exp_str;
  auto* ser_coeff = ser->add_subcommand("coeff", "extract one coefficient");
  ser_coeff->add_option("--input", s_in, "series JSON")->required();
  ser_coeff->add_option("--exp", s_exp_str, "monomial exponents, e.g. 1,2")
      ->required();
  ser_coeff->callback([&]() {
    auto a = series_from_json(slurp(s_in));
    if (!a) throw BadInput("cannot parse series JSON");
    auto exps = parse_int_list(s_exp_str);
    emit_value(format, a->coefficient(Monomial{exps}));
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitBadInput;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const BadInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::domain_error& e) {
    std::string msg = e.what();
    std::cerr << "error: " << msg << "\n";
    if (msg.find("budget") != std::string::npos ||
        msg.find("cap exceeded") != std::string::npos ||
        msg.find("exceeds") != std::string::npos)
      return kExitBudget;
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::string msg = e.what();
    std::cerr << "error: " << msg << "\n";
    if (msg.find("mismatch") != std::string::npos) return kExitMismatch;
    return kExitBadInput;
  }
}
