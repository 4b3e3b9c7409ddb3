#include "parityrank/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "parityrank/certificate_io.hpp"
#include "parityrank/descent2.hpp"
#include "parityrank/descent3.hpp"
#include "parityrank/errors.hpp"
#include "parityrank/family.hpp"
#include "parityrank/localsolve.hpp"
#include "parityrank/rootnum.hpp"

namespace parityrank {

namespace {

Place parse_place(const std::string& text) {
  if (text == "inf" || text == "0") return Place{Int(0)};
  const Int p = parse_int(text);
  if (!is_prime(p)) throw PreconditionError("place must be a prime or 'inf', got " + text);
  return Place{p};
}

std::uint64_t to_u64(const Int& n, const char* what) {
  if (n < 1 || n > Int("4611686018427387904")) throw PreconditionError(std::string(what) + " out of range");
  return std::stoull(n.get_str());
}

RankCertificate certify_hit(int torsion, const PrimePairHit& hit) {
  const Int n(std::to_string(hit.n)), p1(std::to_string(hit.p1)), p2(std::to_string(hit.p2));
  return torsion == 2 ? certify_T2(n, p1, p2) : certify_T3(n, p1, p2);
}

struct Slot {
  bool done = false;
  std::string line;   // empty when n has no prime pair
  std::string error;  // certificate failure
};

int cmd_search(int torsion, const std::string& max_n_text, const std::string& emit_path, unsigned workers,
               bool ordered, std::ostream& out, std::ostream& err) {
  const std::uint64_t max_n = to_u64(parse_int(max_n_text), "--max-n");
  const PrimePairParams params = torsion == 2 ? t2_search_params(max_n) : t3_search_params(max_n);
  params.validate();
  if (workers == 0) workers = 1;

  std::ofstream file;
  if (!emit_path.empty()) {
    file.open(emit_path, std::ios::binary | std::ios::trunc);
    if (!file) throw PreconditionError("cannot open " + emit_path + " for writing");
  }
  std::ostream& sink = emit_path.empty() ? out : static_cast<std::ostream&>(file);

  std::vector<Slot> slots(max_n + 1);
  std::atomic<std::uint64_t> next{1};
  std::mutex mu;
  std::condition_variable ready;

  auto work = [&] {
    for (std::uint64_t n = next++; n <= max_n; n = next++) {
      Slot slot;
      try {
        if (auto hit = prime_pair_for(params, n)) slot.line = emit_certificate(certify_hit(torsion, *hit));
      } catch (const std::exception& e) {
        slot.error = "n = " + std::to_string(n) + ": " + e.what();
      }
      slot.done = true;
      std::lock_guard lock(mu);
      if (!ordered && !slot.line.empty()) sink << slot.line << '\n';
      slots[n] = std::move(slot);
      ready.notify_one();
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);

  std::size_t count = 0;
  std::vector<std::string> errors;
  {
    std::unique_lock lock(mu);
    for (std::uint64_t n = 1; n <= max_n; ++n) {
      ready.wait(lock, [&] { return slots[n].done; });
      Slot& slot = slots[n];
      if (!slot.error.empty()) errors.push_back(slot.error);
      if (!slot.line.empty()) {
        ++count;
        if (ordered) sink << slot.line << '\n';
      }
      slot.line.clear();
    }
  }
  for (auto& t : pool) t.join();
  sink.flush();

  err << "search: " << count << " certificates for torsion " << torsion << ", n <= " << max_n << '\n';
  if (!errors.empty()) {
    for (const auto& e : errors) err << "error: " << e << '\n';
    return kExitInvariant;
  }
  return kExitOk;
}

int cmd_certify(int torsion, const std::string& a, const std::string& b, const std::string& p, const std::string& q,
                std::ostream& out) {
  RankCertificate cert;
  if (torsion == 2) {
    if (b.empty()) throw PreconditionError("certify --torsion 2 needs --b");
    cert = certify_T2(parse_int(b), parse_int(p), parse_int(q));
  } else {
    if (a.empty()) throw PreconditionError("certify --torsion 3 needs --a");
    cert = certify_T3(parse_int(a), parse_int(p), parse_int(q));
  }
  out << emit_certificate(cert) << '\n';
  return kExitOk;
}

void print_selmer_table(const Int& m, IsogenySide side, std::ostream& out) {
  const std::vector<Int> classes = enumerate_QS2(m);
  const std::vector<Place> places = bad_places(m);
  const QuarticSpace model = homogeneous_space(m, side, Int(1));
  out << (side == IsogenySide::kPhi ? "Sel_phi" : "Sel_phi'") << ": d w^2 = d^2 + (" << model.B() << ") z^4\n";
  out << std::setw(10) << "d";
  for (const Place& v : places) out << std::setw(8) << v.str();
  out << std::setw(6) << "Sel" << '\n';
  for (const Int& d : classes) {
    const QuarticSpace space = homogeneous_space(m, side, d);
    bool all = true;
    out << std::setw(10) << d.get_str();
    for (const Place& v : places) {
      const bool ok = locally_solvable(space, v);
      all = all && ok;
      out << std::setw(8) << (ok ? "y" : "n");
    }
    out << std::setw(6) << (all ? "*" : "") << '\n';
  }
}

int cmd_descent2(const std::string& m_text, std::ostream& out) {
  const Int m = parse_int(m_text);
  print_selmer_table(m, IsogenySide::kPhi, out);
  out << '\n';
  print_selmer_table(m, IsogenySide::kPhiDual, out);
  const SelmerGroup2 sel = selmer_group(m, IsogenySide::kPhi);
  const SelmerGroup2 dual = selmer_group(m, IsogenySide::kPhiDual);
  out << "\ndim Sel_phi = " << sel.dimension() << ", dim Sel_phi' = " << dual.dimension()
      << ", rank <= " << rank_upper_2descent(m) << '\n';
  return kExitOk;
}

std::string class_set(const std::vector<CubeClass>& classes) {
  std::string s = "{";
  for (std::size_t k = 0; k < classes.size(); ++k) s += (k ? ", " : "") + classes[k].representative().get_str();
  return s + "}";
}

int cmd_descent3(const std::string& p_text, const std::string& q_text, std::ostream& out) {
  const Int p = parse_int(p_text), q = parse_int(q_text);
  const AlphaImageBound bound = alpha_upper(p, q);
  out << "A_m with m = " << p * q << ", classes of K(S,3) cut to <2, p, q>\n";
  for (const DescentFamily& fam : bound.families) {
    out << "family " << std::left << std::setw(5) << fam.label << std::right
        << " space " << representative_space(fam.representative, p, q).u1() << "X^3 + "
        << representative_space(fam.representative, p, q).u2() << "Y^3 + "
        << representative_space(fam.representative, p, q).u3() << "Z^3:";
    for (const LocalVerdict& v : fam.verdicts) out << "  Q_" << v.place.str() << " " << (v.solvable ? "y" : "n");
    out << (fam.everywhere_locally_solvable ? "  -> kept" : "  -> excluded") << '\n';
  }
  out << "im alpha lower: " << class_set(bound.lower) << '\n';
  out << "im alpha upper: " << class_set(bound.upper) << '\n';
  const int dual = alpha_prime_upper(p, q);
  out << "|im alpha'| <= " << dual << '\n';
  const RankInterval interval = rank_interval_3(p, q, false);
  out << "rank in [" << interval.lo << ", " << interval.hi << "] (before any witness point)\n";
  return kExitOk;
}

int cmd_rootnumber(const std::string& family, const std::string& m_text, std::ostream& out) {
  const Int m = parse_int(m_text);
  const int w = family == "E" ? root_number_Em(m) : root_number_Am(m);
  out << (w > 0 ? "+1" : "-1") << '\n';
  return kExitOk;
}

int cmd_localsolve(const std::string& d, const std::string& B, const std::string& cubic, const std::string& place,
                   std::ostream& out) {
  const Place v = parse_place(place);
  if (!cubic.empty()) {
    if (!d.empty() || !B.empty()) throw PreconditionError("give either --cubic or --d/--B, not both");
    std::vector<Int> u;
    std::stringstream ss(cubic);
    for (std::string part; std::getline(ss, part, ',');) u.push_back(parse_int(part));
    if (u.size() != 3) throw PreconditionError("--cubic needs three comma-separated coefficients");
    const TernaryCubic space(u[0], u[1], u[2]);
    if (v.is_real()) {
      out << "solvable (odd degree over R)\n";
      return kExitOk;
    }
    out << (ternary_cubic_solvable(space, v.p) ? "solvable" : "not solvable") << '\n';
    return kExitOk;
  }
  if (d.empty() || B.empty()) throw PreconditionError("localsolve needs --cubic or both --d and --B");
  const QuarticSpace space(parse_int(d), parse_int(B));
  if (v.is_real()) {
    out << (quartic_solvable_real(space) ? "solvable" : "not solvable") << '\n';
    return kExitOk;
  }
  const bool ok = quartic_solvable_padic(space, v.p);
  out << (ok ? "solvable" : "not solvable");
  if (auto shortcut = quartic_shortcut(space, v.p)) out << " (" << to_string(shortcut->rule) << ")";
  out << '\n';
  return kExitOk;
}

int cmd_verify(bool use_stdin, const std::string& path, std::istream& in, std::ostream& out, std::ostream& err) {
  if (use_stdin == !path.empty()) throw PreconditionError("verify needs exactly one of --stdin or --in");
  std::ifstream file;
  if (!path.empty()) {
    file.open(path, std::ios::binary);
    if (!file) throw PreconditionError("cannot open " + path);
  }
  std::istream& src = path.empty() ? in : static_cast<std::istream&>(file);
  int failures = 0;
  std::size_t line_no = 0, checked = 0;
  for (std::string line; std::getline(src, line);) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    RankCertificate cert;
    try {
      cert = parse_certificate(line);
    } catch (const PreconditionError& e) {
      throw PreconditionError("line " + std::to_string(line_no) + ": " + e.what());
    }
    ++checked;
    try {
      verify_certificate(cert);
      if (emit_certificate(cert) != line) throw InvariantError("certificate check failed: line is not in canonical form");
      out << "line " << line_no << ": ok " << to_string(cert.family) << ' '
          << (cert.family == TorsionFamily::kT2 ? "b=" : "a=") << cert.index() << " p=" << cert.p << " q=" << cert.q
          << '\n';
    } catch (const std::exception& e) {
      ++failures;
      err << "line " << line_no << ": FAIL " << e.what() << '\n';
    }
  }
  out << checked << " certificates checked, " << failures << " failed\n";
  return failures == 0 ? kExitOk : kExitInvariant;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rank certificates for quartic and sextic twist families", "parityrank"};
  app.require_subcommand(1);

  int torsion = 2;
  std::string max_n = "100", emit_path, a, b, p, q, m, family = "E", d, B, cubic, place, in_path;
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  bool ordered = true, use_stdin = false;

  auto* search = app.add_subcommand("search", "Find prime pairs and emit a certificate per hit as JSON lines");
  search->add_option("--torsion", torsion, "2 or 3")->required()->check(CLI::IsMember({2, 3}));
  search->add_option("--max-n", max_n, "Largest index b (torsion 2) or a (torsion 3)");
  search->add_option("--emit", emit_path, "Write JSON lines here instead of stdout");
  search->add_option("--workers", workers, "Worker threads")->check(CLI::Range(1u, 256u));
  search->add_flag("--deterministic-order,!--unordered", ordered, "Emit in ascending index order (default)");

  auto* certify = app.add_subcommand("certify", "Certify one instance");
  certify->add_option("--torsion", torsion, "2 or 3")->required()->check(CLI::IsMember({2, 3}));
  certify->add_option("--a", a, "Index a (torsion 3)");
  certify->add_option("--b", b, "Index b (torsion 2)");
  certify->add_option("--p", p, "First prime")->required();
  certify->add_option("--q", q, "Second prime")->required();

  auto* descent2 = app.add_subcommand("descent2", "2-isogeny Selmer tables for y^2 = x^3 + m x");
  descent2->add_option("--m", m, "Curve parameter")->required();

  auto* descent3 = app.add_subcommand("descent3", "3-isogeny image bounds for y^2 = x^3 + (pq)^2");
  descent3->add_option("--p", p, "Prime >= 5")->required();
  descent3->add_option("--q", q, "Prime >= 5")->required();

  auto* rootnumber = app.add_subcommand("rootnumber", "Root number of E_m or A_m");
  rootnumber->add_option("--family", family, "E or A")->check(CLI::IsMember({"E", "A"}));
  rootnumber->add_option("--m", m, "Square-free parameter")->required();

  auto* localsolve = app.add_subcommand("localsolve", "Local solvability of a homogeneous space");
  localsolve->add_option("--d", d, "Quartic d w^2 = d^2 + B z^4");
  localsolve->add_option("--B", B, "Quartic coefficient B");
  localsolve->add_option("--cubic", cubic, "Diagonal cubic u1,u2,u3");
  localsolve->add_option("--place", place, "Prime or inf")->required();

  auto* verify = app.add_subcommand("verify", "Re-check certificates from JSON lines");
  verify->add_flag("--stdin", use_stdin, "Read from standard input");
  verify->add_option("--in", in_path, "Read from a file");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*search) return cmd_search(torsion, max_n, emit_path, workers, ordered, out, err);
    if (*certify) return cmd_certify(torsion, a, b, p, q, out);
    if (*descent2) return cmd_descent2(m, out);
    if (*descent3) return cmd_descent3(p, q, out);
    if (*rootnumber) return cmd_rootnumber(family, m, out);
    if (*localsolve) return cmd_localsolve(d, B, cubic, place, out);
    if (*verify) return cmd_verify(use_stdin, in_path, in, out, err);
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvariantError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvariant;
  }
  return kExitUsage;
}

}  // namespace parityrank
