#include "savmac/experiments.hpp"

#include <cmath>

#include "savmac/io.hpp"

namespace savmac {

namespace {

double trig_u1(double x, double y) {
  return -x * x * (x - 1.0) * (x - 1.0) * (y - 1.0) * (2.0 * y - 1.0) * y / 128.0;
}

}  // namespace

ChnsState init_condition(const RunConfig& cfg, const StaggeredGrid& g) {
  ChnsState s(g);
  const double pi = 3.14159265358979323846;
  switch (cfg.ic) {
    case InitialCondition::trig: {
      for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
          s.Z(i, j) = std::cos(pi * g.x_center(i)) * std::cos(pi * g.y_center(j));
      for (int j = 0; j < g.ny; ++j)
        for (int i = 1; i < g.nx; ++i)
          s.U1(i, j) = trig_u1(g.x_node(i), g.y_center(j));
      for (int j = 1; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
          s.U2(i, j) = -trig_u1(g.y_node(j), g.x_center(i));
      break;
    }
    case InitialCondition::square: {
      const double half = 0.5 * cfg.square_side;
      for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
          const bool inside = std::abs(g.x_center(i) - cfg.bubble_cx) <= half &&
                              std::abs(g.y_center(j) - cfg.bubble_cy) <= half;
          s.Z(i, j) = inside ? 1.0 : -1.0;
        }
      break;
    }
    case InitialCondition::circle: {
      // Z = -1 inside: the bubble is the light phase and rises under the
      // Boussinesq force -chi (Z - phi0) in the y momentum.
      const double w = std::sqrt(2.0) * cfg.params.epsilon;
      for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
          const double dx = g.x_center(i) - cfg.bubble_cx;
          const double dy = g.y_center(j) - cfg.bubble_cy;
          const double r = std::sqrt(dx * dx + dy * dy);
          s.Z(i, j) = std::tanh((r - cfg.bubble_radius) / w);
        }
      break;
    }
  }
  s.R = initial_sav(s.Z, cfg.params, g);
  s.Zprev = s.Z;
  s.U1prev = s.U1;
  s.U2prev = s.U2;
  return s;
}

Trajectory record_trajectory(const RunConfig& cfg) {
  const StaggeredGrid g = cfg.make_grid();
  const ChnsState init = init_condition(cfg, g);
  Trajectory tr{g, cfg.params.dt, {}};
  tr.steps.push_back(sample_state(init));
  run(init, cfg.params, g,
      {[&tr](int, double, const ChnsState& s, const EnergyLedgerEntry&) {
        tr.steps.push_back(sample_state(s));
      }});
  return tr;
}

double interface_perimeter_proxy(const CellField& Z, const StaggeredGrid& g) {
  const CellField gx = Px_xface_to_center(Dx_center_to_face(Z, g), g);
  const CellField gy = Py_yface_to_center(Dy_center_to_face(Z, g), g);
  double s = 0.0;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      s += std::sqrt(gx(i, j) * gx(i, j) + gy(i, j) * gy(i, j));
  return s * g.h * g.k;
}

double phase_centroid_y(const CellField& Z, const StaggeredGrid& g, double phase) {
  double num = 0.0, den = 0.0;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const double w = 0.5 * (1.0 + phase * Z(i, j));
      num += g.y_center(j) * w;
      den += w;
    }
  return num / den;
}

ConvergeResult experiment_converge(const RunConfig& cfg_in) {
  RunConfig cfg = cfg_in;
  if (cfg.full_tables) {
    cfg.params.t_final = 0.1;
    cfg.levels = {10, 20, 40, 80};
  }
  validate(cfg);

  const std::vector<Quantity> all = {Quantity::Z, Quantity::DZ, Quantity::R,
                                     Quantity::W, Quantity::DW, Quantity::U,
                                     Quantity::dxU1, Quantity::DyU1, Quantity::P};

  ConvergeResult out;
  const double len = cfg.x_hi - cfg.x_lo;

  auto level_config = [&](int inv_h) {
    RunConfig c = cfg;
    c.nx = c.ny = inv_h;
    return c;
  };

  Trajectory prev;  // trajectory of the previous chain grid
  bool have_prev = false;
  std::vector<int> chain = cfg.levels;
  chain.push_back(2 * cfg.levels.back());

  for (size_t idx = 0; idx < chain.size(); ++idx) {
    const RunConfig lc = level_config(chain[idx]);
    const bool last = (idx + 1 == chain.size());
    if (!last) {
      Trajectory tr = record_trajectory(lc);
      if (have_prev) {
        std::vector<double> errs;
        for (Quantity q : all) errs.push_back(cauchy_error(prev, tr, q));
        out.errors.push_back(errs);
        out.hs.push_back(len / chain[idx - 1]);
      }
      prev = std::move(tr);
      have_prev = true;
    } else {
      // stream the final refinement through the accumulator
      const StaggeredGrid g = lc.make_grid();
      CauchyAccumulator acc(prev.grid, g);
      const ChnsState init = init_condition(lc, g);
      acc.add_step(0, prev.steps[0], sample_state(init), lc.params.dt);
      run(init, lc.params, g,
          {[&](int step, double, const ChnsState& s, const EnergyLedgerEntry&) {
            acc.add_step(step, prev.steps[static_cast<size_t>(step)], sample_state(s),
                         lc.params.dt);
          }});
      std::vector<double> errs;
      for (Quantity q : all) errs.push_back(acc.error(q));
      out.errors.push_back(errs);
      out.hs.push_back(len / chain[idx - 1]);
    }
  }

  std::vector<std::string> names;
  for (Quantity q : all) names.push_back(quantity_name(q));
  out.table = rate_table(out.hs, out.errors);

  if (!cfg.out_dir.empty()) {
    ensure_directory(cfg.out_dir);
    auto subtable = [&](const std::vector<int>& cols) {
      std::vector<RateRow> rows = out.table;
      for (RateRow& r : rows) {
        std::vector<double> e;
        std::vector<std::optional<double>> rt;
        for (int c : cols) {
          e.push_back(r.errors[c]);
          rt.push_back(r.rates[c]);
        }
        r.errors = std::move(e);
        r.rates = std::move(rt);
      }
      return rows;
    };
    auto subnames = [&](const std::vector<int>& cols) {
      std::vector<std::string> n;
      for (int c : cols) n.push_back(names[c]);
      return n;
    };
    // phase/auxiliary-scalar, chemical-potential/velocity, velocity-derivative/pressure
    const std::vector<int> t1 = {0, 1, 2}, t2 = {3, 4, 5}, t3 = {6, 7, 8};
    write_rate_csv(cfg.out_dir + "/table1.csv", subnames(t1), subtable(t1));
    write_rate_csv(cfg.out_dir + "/table2.csv", subnames(t2), subtable(t2));
    write_rate_csv(cfg.out_dir + "/table3.csv", subnames(t3), subtable(t3));
  }
  return out;
}

namespace {

BubbleResult run_bubble(const RunConfig& cfg, double bubble_phase) {
  const StaggeredGrid g = cfg.make_grid();
  const ChnsState init = init_condition(cfg, g);

  BubbleResult res;
  res.bubble_phase = bubble_phase;
  res.time.push_back(init.t);
  res.perimeter.push_back(interface_perimeter_proxy(init.Z, g));
  res.centroid_y.push_back(phase_centroid_y(init.Z, g, bubble_phase));

  const bool snapshots = cfg.snapshot_every > 0 && !cfg.out_dir.empty();
  if (snapshots) {
    ensure_directory(cfg.out_dir);
    write_snapshot(cfg.out_dir, 0, init, g, cfg.write_vtk);
  }

  std::vector<Observer> observers;
  observers.push_back([&](int step, double t, const ChnsState& s,
                          const EnergyLedgerEntry&) {
    res.time.push_back(t);
    res.perimeter.push_back(interface_perimeter_proxy(s.Z, g));
    res.centroid_y.push_back(phase_centroid_y(s.Z, g, bubble_phase));
    if (snapshots && step % cfg.snapshot_every == 0) {
      write_snapshot(cfg.out_dir, step, s, g, cfg.write_vtk);
    }
  });

  run(init, cfg.params, g, observers, &res.ledger);

  if (!cfg.out_dir.empty()) {
    ensure_directory(cfg.out_dir);
    write_ledger_csv(cfg.out_dir + "/ledger.csv", res.ledger);
    write_columns_csv(cfg.out_dir + "/observables.csv",
                      {"t", "perimeter", "centroid_y"},
                      {res.time, res.perimeter, res.centroid_y});
  }
  return res;
}

RunConfig scale_up(const RunConfig& cfg_in, double t_full) {
  RunConfig cfg = cfg_in;
  if (cfg.full_scale) {
    cfg.nx = cfg.ny = 100;
    cfg.params.t_final = t_full;
  }
  return cfg;
}

}  // namespace

BubbleResult experiment_square_bubble(const RunConfig& cfg_in) {
  RunConfig cfg = scale_up(cfg_in, 10.0);
  validate(cfg);
  return run_bubble(cfg, +1.0);
}

BubbleResult experiment_buoyant_bubble(const RunConfig& cfg_in) {
  RunConfig cfg = scale_up(cfg_in, 5.0);
  validate(cfg);
  return run_bubble(cfg, -1.0);
}

EnergyLedger experiment_custom(const RunConfig& cfg) {
  const StaggeredGrid g = cfg.make_grid();
  const ChnsState init = init_condition(cfg, g);
  EnergyLedger ledger;

  const bool snapshots = cfg.snapshot_every > 0 && !cfg.out_dir.empty();
  if (snapshots) {
    ensure_directory(cfg.out_dir);
    write_snapshot(cfg.out_dir, 0, init, g, cfg.write_vtk);
  }
  std::vector<Observer> observers;
  if (snapshots) {
    observers.push_back([&](int step, double, const ChnsState& s,
                            const EnergyLedgerEntry&) {
      if (step % cfg.snapshot_every == 0) write_snapshot(cfg.out_dir, step, s, g, cfg.write_vtk);
    });
  }
  run(init, cfg.params, g, observers, &ledger);
  if (!cfg.out_dir.empty()) {
    ensure_directory(cfg.out_dir);
    write_ledger_csv(cfg.out_dir + "/ledger.csv", ledger);
  }
  return ledger;
}

}  // namespace savmac
