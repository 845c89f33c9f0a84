#include "ruelle/commands.hpp"

#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include "ruelle/errors.hpp"

namespace ruelle {

namespace {

WeightSpec weight_for(const RunConfig& cfg, WeightKind kind, const SymmetryGroup& G) {
  WeightSpec w;
  w.kind = kind;
  w.sigma = cfg.sigma;
  w.amplitude = cfg.amplitude;
  w.symmetrize = G.size() > 1;
  w.metric = cfg.metric;
  return w;
}

Metadata config_metadata(const RunConfig& cfg) {
  Metadata m;
  for (auto& kv : config_entries(cfg)) m.push_back(kv);
  return m;
}

void write_output(const RunConfig& cfg, std::ostream& out, const std::string& body) {
  if (cfg.output == "-") {
    out << body;
    return;
  }
  std::ofstream f(cfg.output, std::ios::binary);
  if (!f) throw ValidationError("cannot open output file '" + cfg.output + "'");
  f << body;
  if (!f) throw ValidationError("write to '" + cfg.output + "' failed");
}

}  // namespace

ResonanceReport cmd_resonances(const RunConfig& cfg) {
  SchottkySurface s = make_surface(cfg);
  SymmetryGroup G = make_group(cfg, s);
  GeodesicCache cache = build_cache(s, G, cfg.nmax, WeightSpec{});
  int N = choose_truncation(cache, cfg.scan, 1, cfg.nmax);
  ResonanceReport r;
  r.resonances = scan_rectangle(cache, cfg.scan, cfg.scan_cell, {}, N);
  r.metadata = config_metadata(cfg);
  r.metadata.emplace_back("info.surface", describe(s.params()));
  r.metadata.emplace_back("info.group", G.name());
  r.metadata.emplace_back("info.nmax_used", std::to_string(N));
  r.metadata.emplace_back("info.count", std::to_string(r.resonances.size()));
  return r;
}

void write_resonances_csv(std::ostream& os, const ResonanceReport& report) {
  for (const auto& [k, v] : report.metadata) os << "# " << k << "=" << v << "\n";
  os << "re,im,character,order,newton_residual\n";
  for (const Resonance& z : report.resonances)
    os << format_double(z.location.real()) << ',' << format_double(z.location.imag()) << ',' << z.character << ','
       << z.order << ',' << format_double(z.newton_residual) << '\n';
}

cplx polish_resonance(const GeodesicCache& cache, cplx guess, double radius) {
  double best = std::numeric_limits<double>::infinity();
  cplx found = guess;
  for (int chi = 0; chi < cache.character_count(); ++chi) {
    try {
      Resonance z = newton(character_det(cache, chi), guess);
      double dist = std::abs(z.location - guess);
      if (dist <= radius && dist < best) {
        best = dist;
        found = z.location;
      }
    } catch (const NumericalError&) {
      // this factor has no zero near the guess
    }
  }
  if (!std::isfinite(best))
    throw ValidationError("no resonance within " + format_double(radius) + " of lambda0 = " +
                          format_double(guess.real()) + (guess.imag() < 0 ? "" : "+") + format_double(guess.imag()) +
                          "i; run the resonances command first to locate one");
  return found;
}

DistributionGrid cmd_distribution(const RunConfig& cfg, GridMode mode) {
  if (!cfg.lambda0)
    throw ValidationError("lambda0.re and lambda0.im are required; run the resonances command first to locate one");
  SchottkySurface s = make_surface(cfg);
  SymmetryGroup G = make_group(cfg, s);
  WeightKind kind = mode == GridMode::section ? WeightKind::gauss_section : WeightKind::gauss_base;
  GeodesicCache cache = build_cache(s, G, cfg.nmax, weight_for(cfg, kind, G));
  cplx lambda0 = polish_resonance(cache, *cfg.lambda0);
  GridOptions opts{cfg.threads};
  DistributionGrid g = mode == GridMode::section
                           ? section_grid(cache, lambda0, cfg.grid_resolution, cfg.refinement, opts)
                           : base_grid(cache, lambda0, cfg.grid_resolution, cfg.base, opts);
  Metadata m = config_metadata(cfg);
  m.insert(m.end(), g.metadata.begin(), g.metadata.end());
  g.metadata = std::move(m);
  return g;
}

void cmd_words_stats(const RunConfig& cfg, std::ostream& os) {
  SchottkySurface s = make_surface(cfg);
  SymmetryGroup G = make_group(cfg, s);
  os << "surface " << describe(s.params()) << ", group " << G.name() << " (order " << G.size() << ")\n";
  os << std::setw(3) << "n" << std::setw(12) << "closed" << std::setw(12) << "classes" << std::setw(12)
     << "primitive";
  if (G.size() > 1) os << std::setw(12) << "orbit_reps";
  os << "\n";
  auto reps = orbit_representatives(s, G, cfg.nmax);
  for (int n = 1; n <= cfg.nmax; ++n) {
    auto classes = cyclic_classes(s, n);
    long long prim = 0;
    for (const auto& c : classes) prim += c.primitive ? 1 : 0;
    os << std::setw(3) << n << std::setw(12) << closed_word_count(s.rank(), n) << std::setw(12) << classes.size()
       << std::setw(12) << prim;
    if (G.size() > 1) {
      long long k = 0;
      for (const auto& r : reps) k += r.n_w == n ? 1 : 0;
      os << std::setw(12) << k;
    }
    os << "\n";
  }
  if (G.size() > 1) {
    // Reps by twist element: the free action makes every sector's orbits have size |G| n_w.
    os << "orbit reps by twist:";
    for (int g = 0; g < G.size(); ++g) {
      long long k = 0;
      for (const auto& r : reps) k += r.rep.twist == g ? 1 : 0;
      os << " " << G.element(g).name << "=" << k;
    }
    os << "\n";
  }
}

void cmd_surface_validate(const RunConfig& cfg, std::ostream& os) {
  SchottkySurface s = make_surface(cfg);
  SymmetryGroup G = make_group(cfg, s);
  os << "surface " << describe(s.params()) << ": valid Schottky data, rank " << s.rank() << "\n";
  for (int i = 0; i < s.letters(); ++i) {
    const MoebiusMap& g = s.generator(i);
    const Disc& d = s.discs()[static_cast<size_t>(i)];
    os << "  g" << i + 1 << " = [" << format_double(g.a()) << ", " << format_double(g.b()) << "; "
       << format_double(g.c()) << ", " << format_double(g.d()) << "], length " << format_double(displacement_length(g))
       << ", disc D" << i + 1 << " center " << format_double(d.center) << " radius " << format_double(d.radius)
       << "\n";
  }
  os << "group " << G.name() << " (order " << G.size() << ")";
  if (G.size() > 1)
    os << ", relation defect " << format_double(G.relation_error()) << ", discs permuted "
       << (G.permutes_discs() ? "yes" : "no");
  os << "\n";
  for (int g = 1; g < G.size(); ++g) {
    os << "  " << G.element(g).name << ":";
    for (int i = 0; i < s.letters(); ++i) os << " " << i + 1 << "->" << G.act(g, i) + 1;
    os << "\n";
  }
}

int run_command(const std::string& command, const std::string& config_text, std::ostream& out, std::ostream& err) {
  try {
    RunConfig cfg = parse_config(config_text);
    std::ostringstream body;
    if (command == "resonances") {
      write_resonances_csv(body, cmd_resonances(cfg));
    } else if (command == "distribution-section") {
      write_csv(body, cmd_distribution(cfg, GridMode::section));
    } else if (command == "distribution-base") {
      write_csv(body, cmd_distribution(cfg, GridMode::base));
    } else if (command == "words-stats") {
      cmd_words_stats(cfg, body);
    } else if (command == "surface-validate") {
      cmd_surface_validate(cfg, body);
    } else {
      throw ValidationError("unknown command '" + command + "'");
    }
    write_output(cfg, out, body.str());
    return exit_ok;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return exit_validation;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return exit_numerical;
  }
}

}  // namespace ruelle
