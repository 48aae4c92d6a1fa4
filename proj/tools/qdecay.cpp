// qdecay: entanglement decay of generalized N-qudit GHZ states under local
// depolarizing / phase-damping noise. Thin frontend over the quditdecay C
// API: parses flags (or a JSON config), dispatches, and emits CSV or JSON.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "quditdecay.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitCapacity = 3;
constexpr int kExitDegenerate = 4;
constexpr int kExitVerifyFailed = 5;
constexpr int kExitInternal = 1;

struct CliError {
  int code;
  std::string message;
};

int exit_code_for(qd_status status) {
  switch (status) {
    case QD_OK:
      return kExitOk;
    case QD_ERR_INVALID_ARGUMENT:
    case QD_ERR_UNSUPPORTED:
      return kExitConfig;
    case QD_ERR_CAPACITY:
      return kExitCapacity;
    case QD_ERR_PRODUCT_STATE:
      return kExitDegenerate;
    case QD_ERR_INTERNAL:
      break;
  }
  return kExitInternal;
}

void check(qd_status status) {
  if (status != QD_OK) {
    throw CliError{exit_code_for(status),
                   std::string(qd_status_name(status)) + ": " +
                       qd_last_error()};
  }
}

// ---- formatting ---------------------------------------------------------

std::string format_number(double v, int precision) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v,
                           std::chars_format::general, precision);
  return std::string(buf, res.ptr);
}

std::string format_int(long long v) { return std::to_string(v); }

// ---- output tables ------------------------------------------------------

struct OutCell {
  enum class Kind { Number, Integer, Text, Empty };
  Kind kind = Kind::Empty;
  double num = 0.0;
  long long integer = 0;
  std::string text;

  static OutCell number(double v) {
    OutCell c;
    c.kind = Kind::Number;
    c.num = v;
    return c;
  }
  static OutCell integer_v(long long v) {
    OutCell c;
    c.kind = Kind::Integer;
    c.integer = v;
    return c;
  }
  static OutCell text_v(std::string s) {
    OutCell c;
    c.kind = Kind::Text;
    c.text = std::move(s);
    return c;
  }
  static OutCell empty() { return {}; }
};

struct OutTable {
  std::vector<std::string> columns;
  std::vector<std::vector<OutCell>> rows;
  std::string provenance;
};

struct OutputOptions {
  std::string path;  // empty -> stdout
  std::string format = "csv";
  int precision = 12;
  bool deterministic = false;
};

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\t':
        out += "\\t";
        break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

std::string render_cell_csv(const OutCell& cell, int precision) {
  switch (cell.kind) {
    case OutCell::Kind::Number:
      return format_number(cell.num, precision);
    case OutCell::Kind::Integer:
      return format_int(cell.integer);
    case OutCell::Kind::Text:
      return csv_escape(cell.text);
    case OutCell::Kind::Empty:
      return "";
  }
  return "";
}

std::string render_table(const OutTable& table, const OutputOptions& opts) {
  std::ostringstream os;
  if (opts.format == "json") {
    os << "[\n";
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
      os << "  {";
      for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c > 0) os << ", ";
        os << '"' << json_escape(table.columns[c]) << "\": ";
        const OutCell& cell = table.rows[r][c];
        switch (cell.kind) {
          case OutCell::Kind::Number:
            os << format_number(cell.num, opts.precision);
            break;
          case OutCell::Kind::Integer:
            os << format_int(cell.integer);
            break;
          case OutCell::Kind::Text:
            os << '"' << json_escape(cell.text) << '"';
            break;
          case OutCell::Kind::Empty:
            os << "null";
            break;
        }
      }
      os << (r + 1 < table.rows.size() ? "},\n" : "}\n");
    }
    os << "]\n";
    return os.str();
  }

  // CSV: provenance comment, header, rows; LF endings, C locale numbers
  if (!table.provenance.empty()) {
    os << "# " << table.provenance;
    if (!opts.deterministic) {
      const std::time_t now = std::time(nullptr);
      char stamp[32];
      std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ",
                    std::gmtime(&now));
      os << "; generated " << stamp;
    }
    os << '\n';
  }
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c > 0) os << ',';
    os << csv_escape(table.columns[c]);
  }
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) os << ',';
      os << render_cell_csv(row[c], opts.precision);
    }
    os << '\n';
  }
  return os.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw CliError{kExitConfig, "cannot open output file: " + tmp};
    }
    out << content;
    if (!out.flush()) {
      throw CliError{kExitInternal, "short write to " + tmp};
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw CliError{kExitInternal, "cannot rename " + tmp + " to " + path};
  }
}

void emit(const OutTable& table, const OutputOptions& opts) {
  const std::string content = render_table(table, opts);
  if (opts.path.empty()) {
    std::cout << content;
  } else {
    write_file_atomic(opts.path, content);
  }
}

OutTable from_qd_table(const qd_table* t) {
  OutTable out;
  out.provenance = qd_table_provenance(t);
  const std::size_t cols = qd_table_cols(t);
  for (std::size_t c = 0; c < cols; ++c) {
    out.columns.emplace_back(qd_table_column_name(t, c));
  }
  for (std::size_t r = 0; r < qd_table_rows(t); ++r) {
    std::vector<OutCell> row;
    for (std::size_t c = 0; c < cols; ++c) {
      if (qd_table_cell_is_number(t, r, c)) {
        row.push_back(OutCell::number(qd_table_cell_number(t, r, c)));
      } else {
        const std::string text = qd_table_cell_text(t, r, c);
        row.push_back(text.empty() ? OutCell::empty()
                                   : OutCell::text_v(text));
      }
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

// ---- value parsing ------------------------------------------------------

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, sep)) parts.push_back(item);
  return parts;
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw CliError{kExitConfig, "cannot parse " + what + ": '" + s + "'"};
  }
}

long long parse_int(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw CliError{kExitConfig, "cannot parse " + what + ": '" + s + "'"};
  }
}

// "2,3,4" or "2:50" or "2:50:2"
std::vector<int> parse_int_list(const std::string& spec,
                                const std::string& what) {
  std::vector<int> values;
  for (const std::string& chunk : split(spec, ',')) {
    const auto range = split(chunk, ':');
    if (range.size() == 1) {
      values.push_back(static_cast<int>(parse_int(range[0], what)));
    } else if (range.size() == 2 || range.size() == 3) {
      const long long lo = parse_int(range[0], what);
      const long long hi = parse_int(range[1], what);
      const long long step = range.size() == 3 ? parse_int(range[2], what) : 1;
      if (step <= 0 || hi < lo) {
        throw CliError{kExitConfig, "bad range '" + chunk + "' in " + what};
      }
      for (long long v = lo; v <= hi; v += step) {
        values.push_back(static_cast<int>(v));
      }
    } else {
      throw CliError{kExitConfig, "bad range '" + chunk + "' in " + what};
    }
  }
  if (values.empty()) {
    throw CliError{kExitConfig, what + " must not be empty"};
  }
  return values;
}

// "0,0.5,1" or "0:1:0.1"
std::vector<double> parse_double_grid(const std::string& spec,
                                      const std::string& what) {
  std::vector<double> values;
  for (const std::string& chunk : split(spec, ',')) {
    const auto range = split(chunk, ':');
    if (range.size() == 1) {
      values.push_back(parse_double(range[0], what));
    } else if (range.size() == 3) {
      const double lo = parse_double(range[0], what);
      const double hi = parse_double(range[1], what);
      const double step = parse_double(range[2], what);
      if (step <= 0.0 || hi < lo) {
        throw CliError{kExitConfig, "bad range '" + chunk + "' in " + what};
      }
      const int count = static_cast<int>(std::floor((hi - lo) / step + 0.5));
      for (int k = 0; k <= count; ++k) {
        values.push_back(std::min(lo + k * step, hi));
      }
    } else {
      throw CliError{kExitConfig, "bad range '" + chunk + "' in " + what};
    }
  }
  if (values.empty()) {
    throw CliError{kExitConfig, what + " must not be empty"};
  }
  return values;
}

// ---- state construction -------------------------------------------------

struct StateOptions {
  int d = 0;
  int N = 0;
  bool equal = false;
  std::string alphas_inline;  // "re,im;re,im;..."
  std::string alphas_file;    // JSON array of [re, im] pairs
  std::string magnitudes;     // "m;m;..."
};

struct StateHandle {
  qd_state* s = nullptr;
  StateHandle() = default;
  StateHandle(const StateHandle&) = delete;
  StateHandle& operator=(const StateHandle&) = delete;
  ~StateHandle() { qd_state_destroy(s); }
};

void parse_amplitude_pairs(const std::string& text, std::vector<double>& re,
                           std::vector<double>& im) {
  for (const std::string& chunk : split(text, ';')) {
    const auto parts = split(chunk, ',');
    if (parts.size() != 2) {
      throw CliError{
          kExitConfig,
          "amplitudes must be 're,im' pairs separated by ';', got '" + chunk +
              "'"};
    }
    re.push_back(parse_double(parts[0], "amplitude"));
    im.push_back(parse_double(parts[1], "amplitude"));
  }
}

void load_alphas_file(const std::string& path, std::vector<double>& re,
                      std::vector<double>& im) {
  std::ifstream in(path);
  if (!in) {
    throw CliError{kExitConfig, "cannot open amplitude file: " + path};
  }
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw CliError{kExitConfig,
                   "cannot parse amplitude file " + path + ": " + e.what()};
  }
  if (!doc.is_array()) {
    throw CliError{kExitConfig,
                   "amplitude file must hold a JSON array of [re, im] pairs"};
  }
  for (const auto& entry : doc) {
    if (entry.is_number()) {
      re.push_back(entry.get<double>());
      im.push_back(0.0);
    } else if (entry.is_array() && entry.size() == 2 &&
               entry[0].is_number() && entry[1].is_number()) {
      re.push_back(entry[0].get<double>());
      im.push_back(entry[1].get<double>());
    } else {
      throw CliError{
          kExitConfig,
          "amplitude file entries must be numbers or [re, im] pairs"};
    }
  }
}

void make_state(const StateOptions& opts, StateHandle& handle) {
  if (opts.d < 2 || opts.N < 2) {
    throw CliError{kExitConfig, "--d and --N must both be at least 2"};
  }
  const int sources = (opts.equal ? 1 : 0) +
                      (!opts.alphas_inline.empty() ? 1 : 0) +
                      (!opts.alphas_file.empty() ? 1 : 0) +
                      (!opts.magnitudes.empty() ? 1 : 0);
  if (sources != 1) {
    throw CliError{kExitConfig,
                   "choose exactly one amplitude source: --equal, --alphas, "
                   "--alphas-file or --magnitudes"};
  }
  if (opts.equal) {
    check(qd_state_create_equal(opts.d, opts.N, &handle.s));
    return;
  }
  std::vector<double> re;
  std::vector<double> im;
  if (!opts.alphas_inline.empty()) {
    parse_amplitude_pairs(opts.alphas_inline, re, im);
  } else if (!opts.alphas_file.empty()) {
    load_alphas_file(opts.alphas_file, re, im);
  } else {
    for (const std::string& chunk : split(opts.magnitudes, ';')) {
      re.push_back(parse_double(chunk, "magnitude"));
      im.push_back(0.0);
    }
  }
  if (static_cast<int>(re.size()) != opts.d) {
    throw CliError{kExitConfig, "expected " + std::to_string(opts.d) +
                                    " amplitudes, got " +
                                    std::to_string(re.size())};
  }
  check(qd_state_create(opts.d, opts.N, re.data(), im.data(), &handle.s));
}

qd_channel parse_channel(const std::string& name) {
  if (name == "depolarizing") return QD_CHANNEL_DEPOLARIZING;
  if (name == "phase-damping") return QD_CHANNEL_PHASE_DAMPING;
  if (name == "both") return QD_CHANNEL_BOTH;
  throw CliError{kExitConfig, "unknown channel '" + name + "'"};
}

// --per-pair expands one row per (i, j); keep that bounded
constexpr long long kMaxPerPairRows = 100000;

void check_per_pair_size(long long pairs) {
  if (pairs > kMaxPerPairRows) {
    throw CliError{kExitConfig,
                   "--per-pair output is limited to " +
                       std::to_string(kMaxPerPairRows) + " pairs, got " +
                       std::to_string(pairs)};
  }
}

long long dense_cap_from_env(long long flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("QDECAY_DENSE_CAP")) {
    const long long v = parse_int(env, "QDECAY_DENSE_CAP");
    if (v <= 0) {
      throw CliError{kExitConfig, "QDECAY_DENSE_CAP must be positive"};
    }
    return v;
  }
  return 0;  // library default
}

std::string cli_provenance() {
  return std::string("quditdecay ") + qd_version();
}

// ---- plot scripts -------------------------------------------------------

void write_plot_script(const std::string& script_path,
                       const std::string& csv_path,
                       const std::string& quantity,
                       const std::vector<int>& N_values) {
  std::ostringstream os;
  os << "# gnuplot script; expects the CSV written alongside it\n"
     << "set datafile separator ','\n"
     << "set xlabel '" << (quantity == "negativity-curve" ? "p" : "d") << "'\n"
     << "set ylabel '" << quantity << "'\n"
     << "set key left bottom\n";
  os << "plot \\\n";
  for (std::size_t k = 0; k < N_values.size(); ++k) {
    const int N = N_values[k];
    if (quantity == "negativity-curve") {
      os << "  '" << csv_path << "' using 3:($2==" << N
         << "?$5:1/0) with linespoints title 'N=" << N << "'";
    } else {
      os << "  '" << csv_path << "' using 1:($2==" << N
         << "?$3:1/0) with linespoints title 'N=" << N << "'";
    }
    os << (k + 1 < N_values.size() ? ", \\\n" : "\n");
  }
  write_file_atomic(script_path, os.str());
}

// ---- config file injection ---------------------------------------------

std::vector<std::string> config_tokens(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw CliError{kExitConfig, "cannot open config file: " + path};
  }
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw CliError{kExitConfig,
                   "cannot parse config file " + path + ": " + e.what()};
  }
  if (!doc.is_object()) {
    throw CliError{kExitConfig, "config file must hold a JSON object"};
  }
  std::vector<std::string> tokens;
  for (const auto& [key, value] : doc.items()) {
    const std::string flag = "--" + key;
    if (value.is_boolean()) {
      if (value.get<bool>()) tokens.push_back(flag);
    } else if (value.is_number_integer()) {
      tokens.push_back(flag);
      tokens.push_back(std::to_string(value.get<long long>()));
    } else if (value.is_number()) {
      tokens.push_back(flag);
      tokens.push_back(format_number(value.get<double>(), 17));
    } else if (value.is_string()) {
      tokens.push_back(flag);
      tokens.push_back(value.get<std::string>());
    } else if (value.is_array()) {
      std::string joined;
      for (const auto& item : value) {
        if (!joined.empty()) joined += ',';
        if (item.is_number_integer()) {
          joined += std::to_string(item.get<long long>());
        } else if (item.is_number()) {
          joined += format_number(item.get<double>(), 17);
        } else if (item.is_string()) {
          joined += item.get<std::string>();
        } else {
          throw CliError{kExitConfig, "config key '" + key +
                                          "' has an unsupported array "
                                          "element"};
        }
      }
      tokens.push_back(flag);
      tokens.push_back(joined);
    } else {
      throw CliError{kExitConfig,
                     "config key '" + key + "' has an unsupported type"};
    }
  }
  return tokens;
}

// Splice config-file tokens right after the subcommand so explicit flags
// (later tokens, take_last) win.
std::vector<std::string> preprocess_args(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  for (std::size_t i = 0; i < args.size(); ++i) {
    std::string file;
    std::size_t remove = 0;
    if (args[i] == "--config" && i + 1 < args.size()) {
      file = args[i + 1];
      remove = 2;
    } else if (args[i].rfind("--config=", 0) == 0) {
      file = args[i].substr(9);
      remove = 1;
    }
    if (remove == 0) continue;
    const auto injected = config_tokens(file);
    args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
               args.begin() + static_cast<std::ptrdiff_t>(i + remove));
    const std::size_t at = args.empty() ? 0 : 1;  // after the subcommand
    args.insert(args.begin() + static_cast<std::ptrdiff_t>(at),
                injected.begin(), injected.end());
    break;
  }
  return args;
}

void add_state_flags(CLI::App* cmd, StateOptions& opts) {
  cmd->add_option("--d", opts.d, "qudit dimension d >= 2")->take_last();
  cmd->add_option("--N", opts.N, "number of qudits N >= 2")->take_last();
  cmd->add_flag("--equal", opts.equal, "equal amplitudes 1/sqrt(d)");
  cmd->add_option("--alphas", opts.alphas_inline,
                  "inline amplitudes 're,im;re,im;...'")
      ->take_last();
  cmd->add_option("--alphas-file", opts.alphas_file,
                  "JSON file with an array of [re, im] pairs")
      ->take_last();
  cmd->add_option("--magnitudes", opts.magnitudes,
                  "real magnitudes 'm;m;...' (phases set to zero)")
      ->take_last();
}

std::string config_sink;  // --config is handled before CLI11 ever runs

void add_output_flags(CLI::App* cmd, OutputOptions& opts) {
  cmd->add_option("--out", opts.path, "output file (default: stdout)")
      ->take_last();
  cmd->add_option("--format", opts.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->take_last();
  cmd->add_option("--precision", opts.precision,
                  "significant digits for emitted numbers")
      ->check(CLI::Range(6, 17))
      ->take_last();
  cmd->add_flag("--deterministic", opts.deterministic,
                "suppress the timestamp in the provenance comment");
  cmd->add_option("--config", config_sink,
                  "JSON config file with the same keys as the flags")
      ->take_last();
}

const char* method_name(qd_method m) {
  return m == QD_METHOD_CLOSED_FORM ? "closed-form" : "bisection";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "negativity decay of generalized N-qudit GHZ states under local "
      "depolarizing or phase-damping noise"};
  app.require_subcommand(1);
  app.set_version_flag("--version", qd_version());

  // negativity ------------------------------------------------------------
  StateOptions neg_state;
  std::string neg_channel = "depolarizing";
  OutputOptions neg_output;
  double neg_p = -1.0;
  std::string neg_p_grid;
  int neg_n = 0;
  bool neg_per_pair = false;
  CLI::App* neg = app.add_subcommand(
      "negativity", "negativity of the (N-n)|n bipartition at one or more p");
  add_state_flags(neg, neg_state);
  neg->add_option("--channel", neg_channel, "depolarizing or phase-damping")
      ->check(CLI::IsMember({"depolarizing", "phase-damping"}))
      ->take_last();
  neg->add_option("--p", neg_p, "channel strength in [0,1]")->take_last();
  neg->add_option("--p-grid", neg_p_grid, "grid 'lo:hi:step' or 'a,b,c'")
      ->take_last();
  neg->add_option("--n", neg_n, "bipartition size, 1 <= n <= N-1")
      ->take_last();
  neg->add_flag("--per-pair", neg_per_pair, "emit per-pair contributions");
  add_output_flags(neg, neg_output);

  // critical ----------------------------------------------------------------
  StateOptions crit_state;
  std::string crit_channel = "depolarizing";
  OutputOptions crit_output;
  bool crit_balanced = false;
  int crit_partition = -1;
  double crit_epsilon = -1.0;
  bool crit_per_pair = false;
  CLI::App* crit = app.add_subcommand(
      "critical",
      "critical channel strengths: vanishing points and epsilon thresholds");
  add_state_flags(crit, crit_state);
  crit->add_option("--channel", crit_channel, "depolarizing or phase-damping")
      ->check(CLI::IsMember({"depolarizing", "phase-damping"}))
      ->take_last();
  crit->add_flag("--balanced", crit_balanced,
                 "closed-form vanishing point of the most balanced split "
                 "(N even, depolarizing)");
  crit->add_option("--partition", crit_partition,
                   "vanishing point of the (N-n)|n split for this n")
      ->take_last();
  crit->add_option("--epsilon", crit_epsilon,
                   "threshold where the pair eigenvalue reaches this "
                   "fraction of its p=0 magnitude")
      ->take_last();
  crit->add_flag("--per-pair", crit_per_pair, "emit per-pair values");
  add_output_flags(crit, crit_output);

  // sweep ---------------------------------------------------------------------
  std::string sweep_channel = "depolarizing";
  OutputOptions sweep_output;
  std::string sweep_alphas;
  std::string sweep_quantity;
  std::string sweep_d_spec;
  std::string sweep_N_spec;
  double sweep_epsilon = 0.01;
  std::string sweep_p_grid;
  int sweep_curve_n = 0;
  std::string sweep_plot_script;
  bool sweep_equal = false;
  CLI::App* sweep =
      app.add_subcommand("sweep", "evaluate a quantity over a (d, N[, p]) grid");
  sweep
      ->add_option("--quantity", sweep_quantity,
                   "p-balanced | p-least-balanced | p-epsilon | "
                   "negativity-curve")
      ->check(CLI::IsMember({"p-balanced", "p-least-balanced", "p-epsilon",
                             "negativity-curve"}))
      ->required()
      ->take_last();
  sweep->add_option("--d", sweep_d_spec, "d values: '2:50[:step]' or '2,3,5'")
      ->required()
      ->take_last();
  sweep->add_option("--N", sweep_N_spec, "N values: '4,6,8' or '2:12:2'")
      ->required()
      ->take_last();
  sweep->add_flag("--equal", sweep_equal,
                  "equal amplitudes 1/sqrt(d) (default)");
  sweep->add_option("--alphas", sweep_alphas,
                    "explicit amplitudes 're,im;...' (single d value only)")
      ->take_last();
  sweep->add_option("--channel", sweep_channel, "depolarizing or phase-damping")
      ->check(CLI::IsMember({"depolarizing", "phase-damping"}))
      ->take_last();
  sweep->add_option("--epsilon", sweep_epsilon, "epsilon for p-epsilon")
      ->take_last();
  sweep->add_option("--p-grid", sweep_p_grid,
                    "p grid for negativity-curve: 'lo:hi:step' or list")
      ->take_last();
  sweep->add_option("--curve-n", sweep_curve_n,
                    "bipartition size for negativity-curve (default N/2)")
      ->take_last();
  sweep->add_option("--plot-script", sweep_plot_script,
                    "also write a gnuplot script referencing the CSV")
      ->take_last();
  add_output_flags(sweep, sweep_output);

  // verify ---------------------------------------------------------------------
  OutputOptions verify_output;
  std::string verify_suite = "default";
  std::string verify_d_spec;
  std::string verify_N_spec;
  std::string verify_channel = "both";
  std::string verify_p_grid;
  std::string verify_n_spec;
  int verify_random = -1;
  unsigned long long verify_seed = 0;
  long long verify_cap = 0;
  CLI::App* verify = app.add_subcommand(
      "verify", "certify the analytic negativities against the dense oracle");
  verify->add_option("--suite", verify_suite, "suite name (default)")
      ->check(CLI::IsMember({"default"}))
      ->take_last();
  verify->add_option("--d", verify_d_spec, "override d values")->take_last();
  verify->add_option("--N", verify_N_spec, "override N values")->take_last();
  verify
      ->add_option("--channel", verify_channel,
                   "depolarizing, phase-damping or both")
      ->check(CLI::IsMember({"depolarizing", "phase-damping", "both"}))
      ->take_last();
  verify->add_option("--p-grid", verify_p_grid, "override the p grid")
      ->take_last();
  verify->add_option("--n", verify_n_spec, "override the partition sizes")
      ->take_last();
  verify
      ->add_option("--random-vectors", verify_random,
                   "random amplitude vectors per (d, N)")
      ->take_last();
  verify->add_option("--seed", verify_seed, "seed for the random vectors")
      ->take_last();
  verify->add_option("--dense-cap", verify_cap,
                     "dense dimension cap (or QDECAY_DENSE_CAP)")
      ->take_last();
  add_output_flags(verify, verify_output);

  // asymptotes -----------------------------------------------------------------
  OutputOptions asym_output;
  std::string asym_d_spec;
  std::string asym_N_spec;
  double asym_epsilon = 0.01;
  CLI::App* asym = app.add_subcommand(
      "asymptotes",
      "exact critical strengths against their large-N / large-d asymptotes");
  asym->add_option("--d", asym_d_spec, "d values")->required()->take_last();
  asym->add_option("--N", asym_N_spec, "N values (even)")
      ->required()
      ->take_last();
  asym->add_option("--epsilon", asym_epsilon, "epsilon for the threshold")
      ->take_last();
  add_output_flags(asym, asym_output);

  try {
    auto args = preprocess_args(argc, argv);
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << '\n';
    return e.code;
  }

  try {
    if (neg->parsed()) {
      const bool has_p = neg->count("--p") > 0;
      const bool has_grid = !neg_p_grid.empty();
      if (has_p == has_grid) {
        throw CliError{kExitConfig,
                       "negativity needs exactly one of --p or --p-grid"};
      }
      if (neg->count("--n") == 0) {
        throw CliError{kExitConfig, "negativity needs --n"};
      }
      StateHandle state;
      make_state(neg_state, state);
      const qd_channel channel = parse_channel(neg_channel);
      const std::vector<double> grid =
          has_p ? std::vector<double>{neg_p}
                : parse_double_grid(neg_p_grid, "--p-grid");

      OutTable table;
      table.provenance = cli_provenance();
      const long long pairs = qd_state_pair_count(state.s);
      if (neg_per_pair) {
        check_per_pair_size(pairs);
        table.columns = {"p", "n", "negativity", "i", "j", "contribution"};
      } else {
        table.columns = {"p", "n", "negativity"};
      }
      std::vector<double> contribs(static_cast<std::size_t>(pairs));
      for (double p : grid) {
        double value = 0.0;
        check(qd_negativity(state.s, channel, p, neg_n, &value,
                            neg_per_pair ? contribs.data() : nullptr));
        if (!neg_per_pair) {
          table.rows.push_back({OutCell::number(p), OutCell::integer_v(neg_n),
                                OutCell::number(value)});
          continue;
        }
        std::size_t idx = 0;
        for (int i = 0; i < neg_state.d; ++i) {
          for (int j = i + 1; j < neg_state.d; ++j, ++idx) {
            table.rows.push_back(
                {OutCell::number(p), OutCell::integer_v(neg_n),
                 OutCell::number(value), OutCell::integer_v(i),
                 OutCell::integer_v(j), OutCell::number(contribs[idx])});
          }
        }
      }
      emit(table, neg_output);
      return kExitOk;
    }

    if (crit->parsed()) {
      StateHandle state;
      make_state(crit_state, state);
      if (qd_state_is_product(state.s)) {
        throw CliError{kExitDegenerate,
                       "product state: no level pair contributes negativity, "
                       "every critical strength is undefined"};
      }
      const int selected = (crit_balanced ? 1 : 0) +
                           (crit->count("--partition") > 0 ? 1 : 0) +
                           (crit->count("--epsilon") > 0 ? 1 : 0);
      if (selected != 1) {
        throw CliError{kExitConfig,
                       "critical needs exactly one of --balanced, "
                       "--partition or --epsilon"};
      }
      const qd_channel channel = parse_channel(crit_channel);
      if (crit_balanced && channel != QD_CHANNEL_DEPOLARIZING) {
        throw CliError{kExitConfig,
                       "--balanced applies to the depolarizing channel"};
      }

      const long long pairs = qd_state_pair_count(state.s);
      if (crit_per_pair) check_per_pair_size(pairs);
      std::vector<double> pair_values(static_cast<std::size_t>(pairs));
      double value = 0.0;
      qd_method method = QD_METHOD_CLOSED_FORM;
      int warn = 0;
      std::string quantity;
      int n_used = 0;
      if (crit_balanced) {
        quantity = "balanced";
        n_used = crit_state.N / 2;
        check(qd_critical_balanced(
            state.s, &value, &method, &warn,
            crit_per_pair ? pair_values.data() : nullptr));
      } else if (crit->count("--partition") > 0) {
        quantity = "partition";
        n_used = crit_partition;
        check(qd_critical_partition(
            state.s, channel, crit_partition, &value, &method, &warn,
            crit_per_pair ? pair_values.data() : nullptr));
      } else {
        quantity = "epsilon-threshold";
        n_used = crit_state.N / 2;
        check(qd_epsilon_threshold(
            state.s, channel, n_used, crit_epsilon, &value, &method, &warn,
            crit_per_pair ? pair_values.data() : nullptr));
      }

      std::string warning;
      if (warn) warning = "multiple sign changes in the bracket scan";
      if (crit_balanced && qd_state_nonzero_levels(state.s) > 2) {
        if (!warning.empty()) warning += "; ";
        warning +=
            "closed form neglects the cross-level weight for d >= 3; "
            "'critical --partition " +
            std::to_string(n_used) + "' gives the exact value";
      }

      OutTable table;
      table.provenance = cli_provenance();
      table.columns = {"quantity", "n", "epsilon", "i",
                       "j",        "value", "method", "warning"};
      const OutCell eps_cell = crit->count("--epsilon") > 0
                                   ? OutCell::number(crit_epsilon)
                                   : OutCell::empty();
      table.rows.push_back(
          {OutCell::text_v(quantity), OutCell::integer_v(n_used), eps_cell,
           OutCell::empty(), OutCell::empty(), OutCell::number(value),
           OutCell::text_v(method_name(method)),
           warning.empty() ? OutCell::empty() : OutCell::text_v(warning)});
      if (crit_per_pair) {
        std::size_t idx = 0;
        for (int i = 0; i < crit_state.d; ++i) {
          for (int j = i + 1; j < crit_state.d; ++j, ++idx) {
            const double pv = pair_values[idx];
            table.rows.push_back(
                {OutCell::text_v("pair"), OutCell::integer_v(n_used), eps_cell,
                 OutCell::integer_v(i), OutCell::integer_v(j),
                 std::isnan(pv) ? OutCell::empty() : OutCell::number(pv),
                 OutCell::text_v(method_name(method)),
                 std::isnan(pv) ? OutCell::text_v("excluded: zero amplitude")
                                : OutCell::empty()});
          }
        }
      }
      emit(table, crit_output);
      return kExitOk;
    }

    if (sweep->parsed()) {
      const auto d_values = parse_int_list(sweep_d_spec, "--d");
      const auto N_values = parse_int_list(sweep_N_spec, "--N");
      qd_sweep_request req{};
      req.d_values = d_values.data();
      req.num_d = d_values.size();
      req.N_values = N_values.data();
      req.num_N = N_values.size();
      req.channel = parse_channel(sweep_channel);
      req.epsilon = sweep_epsilon;
      req.curve_n = sweep_curve_n;
      if (sweep_quantity == "p-balanced") {
        req.quantity = QD_QUANTITY_P_BALANCED;
      } else if (sweep_quantity == "p-least-balanced") {
        req.quantity = QD_QUANTITY_P_LEAST_BALANCED;
      } else if (sweep_quantity == "p-epsilon") {
        req.quantity = QD_QUANTITY_P_EPSILON;
      } else {
        req.quantity = QD_QUANTITY_NEGATIVITY_CURVE;
      }
      std::vector<double> p_grid;
      if (!sweep_p_grid.empty()) {
        p_grid = parse_double_grid(sweep_p_grid, "--p-grid");
        req.p_grid = p_grid.data();
        req.num_p = p_grid.size();
      }
      std::vector<double> re;
      std::vector<double> im;
      if (!sweep_alphas.empty()) {
        parse_amplitude_pairs(sweep_alphas, re, im);
        req.alphas_re = re.data();
        req.alphas_im = im.data();
        req.num_alphas = re.size();
      }
      qd_table* raw = nullptr;
      check(qd_sweep_run(&req, &raw));
      const OutTable table = from_qd_table(raw);
      qd_table_destroy(raw);
      emit(table, sweep_output);
      if (!sweep_plot_script.empty()) {
        if (sweep_output.path.empty()) {
          throw CliError{kExitConfig,
                         "--plot-script needs --out so the script can "
                         "reference the CSV"};
        }
        write_plot_script(sweep_plot_script, sweep_output.path,
                          sweep_quantity, N_values);
      }
      return kExitOk;
    }

    if (verify->parsed()) {
      qd_verify_options opts{};
      std::vector<int> d_values;
      std::vector<int> N_values;
      std::vector<int> n_values;
      std::vector<double> p_grid;
      if (!verify_d_spec.empty()) {
        d_values = parse_int_list(verify_d_spec, "--d");
        opts.d_values = d_values.data();
        opts.num_d = d_values.size();
      }
      if (!verify_N_spec.empty()) {
        N_values = parse_int_list(verify_N_spec, "--N");
        opts.N_values = N_values.data();
        opts.num_N = N_values.size();
      }
      if (!verify_n_spec.empty()) {
        n_values = parse_int_list(verify_n_spec, "--n");
        opts.n_values = n_values.data();
        opts.num_n = n_values.size();
      }
      if (!verify_p_grid.empty()) {
        p_grid = parse_double_grid(verify_p_grid, "--p-grid");
        opts.p_grid = p_grid.data();
        opts.num_p = p_grid.size();
      }
      opts.channel = parse_channel(verify_channel);
      opts.random_vectors = verify_random;
      opts.seed = verify_seed;
      opts.dense_cap = dense_cap_from_env(verify_cap);

      qd_table* raw = nullptr;
      int all_pass = 0;
      check(qd_verify_run(&opts, &raw, &all_pass));
      OutTable table = from_qd_table(raw);
      qd_table_destroy(raw);

      double max_dev = 0.0;
      for (const auto& row : table.rows) {
        if (row[4].kind == OutCell::Kind::Number) {
          max_dev = std::max(max_dev, row[4].num);
        }
      }
      if (verify_output.deterministic) {
        // wall times vary run to run; drop them so reruns are byte-identical
        const auto it = std::find(table.columns.begin(), table.columns.end(),
                                  "seconds");
        if (it != table.columns.end()) {
          const std::size_t col =
              static_cast<std::size_t>(it - table.columns.begin());
          table.columns.erase(it);
          for (auto& row : table.rows) {
            row.erase(row.begin() + static_cast<std::ptrdiff_t>(col));
          }
        }
      }
      emit(table, verify_output);
      std::cerr << (all_pass ? "verify: all instances passed"
                             : "verify: FAILURES detected")
                << " (max deviation " << format_number(max_dev, 6) << ")\n";
      return all_pass ? kExitOk : kExitVerifyFailed;
    }

    if (asym->parsed()) {
      const auto d_values = parse_int_list(asym_d_spec, "--d");
      const auto N_values = parse_int_list(asym_N_spec, "--N");
      qd_table* raw = nullptr;
      check(qd_asymptote_report(d_values.data(), d_values.size(),
                                N_values.data(), N_values.size(),
                                asym_epsilon, &raw));
      const OutTable table = from_qd_table(raw);
      qd_table_destroy(raw);
      emit(table, asym_output);
      return kExitOk;
    }
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << '\n';
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitOk;
}
