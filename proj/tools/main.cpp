// Command-line surface for the discrete topological graph calculus.
//
// Exit codes: 0 success, 1 typed domain error (name on stderr), 2 malformed
// input. All output is deterministic for identical inputs.

#include <functional>
#include <iostream>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tgraph/tgraph.hpp"

using namespace tgraph;

namespace {

std::string join_set(const std::set<std::string>& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& v : s) {
    if (!first) out += ", ";
    out += v;
    first = false;
  }
  return out + "}";
}

json set_to_json(const std::set<std::string>& s) {
  json j = json::array();
  for (const auto& v : s) j.push_back(v);
  return j;
}

TopGraph load_graph_checked(const std::string& path) {
  auto g = load_graph_file(path);
  validate(g);
  return g;
}

void graph_text(std::ostream& os, const TopGraph& g) {
  os << "vertices = " << join_set(g.vertices()) << "\n";
  for (const auto& [id, c] : g.classes())
    os << id << ": " << c.dom << " -> " << c.ran << " (mult "
       << c.mult.to_string() << ")\n";
}

// Produced values go to --out when given, stdout otherwise.
void emit_json(const json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw ParseError("cannot write '" + out_path + "'");
  out << j.dump(2) << "\n";
}

void emit_text(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw ParseError("cannot write '" + out_path + "'");
  out << text;
}

std::set<std::string> as_set(const std::vector<std::string>& v) {
  return {v.begin(), v.end()};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"calculus for discrete topological graphs"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "text";
  app.add_option("--format", format, "output format: text or structured")
      ->check(CLI::IsMember({"text", "structured"}));

  std::function<void()> action;
  bool structured = false;

  // ---- validate -----------------------------------------------------------
  {
    auto* cmd = app.add_subcommand("validate", "check graph invariants");
    auto path = std::make_shared<std::string>();
    cmd->add_option("graph", *path, "graph file")->required();
    cmd->callback([&, path] {
      action = [&, path] {
        load_graph_checked(*path);
        if (structured)
          std::cout << json{{"ok", true}}.dump(2) << "\n";
        else
          std::cout << "ok\n";
      };
    });
  }

  // ---- classify -----------------------------------------------------------
  {
    auto* cmd = app.add_subcommand("classify", "partition vertices by indegree");
    auto path = std::make_shared<std::string>();
    cmd->add_option("graph", *path, "graph file")->required();
    cmd->callback([&, path] {
      action = [&, path] {
        auto c = classify(load_graph_checked(*path));
        if (structured) {
          json j{{"sce", set_to_json(c.sce)}, {"inf", set_to_json(c.inf)},
                 {"rg", set_to_json(c.rg)},  {"fin", set_to_json(c.fin)},
                 {"sg", set_to_json(c.sg)}};
          std::cout << j.dump(2) << "\n";
        } else {
          std::cout << "sce = " << join_set(c.sce) << "\n"
                    << "inf = " << join_set(c.inf) << "\n"
                    << "rg = " << join_set(c.rg) << "\n";
        }
      };
    });
  }

  // ---- paths --------------------------------------------------------------
  {
    auto* cmd = app.add_subcommand("paths", "enumerate paths up to a length");
    auto path = std::make_shared<std::string>();
    auto max_len = std::make_shared<std::size_t>(0);
    cmd->add_option("graph", *path, "graph file")->required();
    cmd->add_option("--max-len", *max_len, "maximum path length")->required();
    cmd->callback([&, path, max_len] {
      action = [&, path, max_len] {
        auto g = load_graph_checked(*path);
        auto e = enumerate_paths(g, *max_len);
        if (structured) {
          json j;
          j["counts"] = json::array();
          for (const auto& c : e.counts) j["counts"].push_back(cardinal_to_json(c));
          j["paths"] = json::array();
          for (const auto& bucket : e.by_length) {
            json b = json::array();
            for (const auto& p : bucket) b.push_back(format_path(g, p));
            j["paths"].push_back(std::move(b));
          }
          std::cout << j.dump(2) << "\n";
        } else {
          for (std::size_t n = 0; n < e.counts.size(); ++n)
            std::cout << "count[" << n << "] = " << e.counts[n].to_string() << "\n";
          for (const auto& bucket : e.by_length)
            for (const auto& p : bucket)
              std::cout << "path: " << format_path(g, p) << "\n";
        }
      };
    });
  }

  // ---- free ---------------------------------------------------------------
  {
    auto* cmd = app.add_subcommand("free", "test topological freeness");
    auto path = std::make_shared<std::string>();
    cmd->add_option("graph", *path, "graph file")->required();
    cmd->callback([&, path] {
      action = [&, path] {
        auto g = load_graph_checked(*path);
        auto r = is_topologically_free(g);
        if (structured) {
          json j{{"free", r.free}};
          j["witness"] = r.witness ? json(format_path(g, *r.witness)) : json();
          std::cout << j.dump(2) << "\n";
        } else {
          std::cout << "topologically free: " << (r.free ? "true" : "false") << "\n";
          if (r.witness)
            std::cout << "witness: " << format_path(g, *r.witness) << "\n";
        }
      };
    });
  }

  // ---- map-validate -------------------------------------------------------
  {
    auto* cmd = app.add_subcommand("map-validate", "check factor-map conditions");
    auto path = std::make_shared<std::string>();
    cmd->add_option("map", *path, "factor map file")->required();
    cmd->callback([&, path] {
      action = [&, path] {
        auto m = load_map_file(*path);
        validate(m);
        bool reg = is_regular(m);
        bool surj = is_vertex_surjective(m);
        if (structured) {
          json j{{"ok", true}, {"regular", reg}, {"surjective", surj}};
          std::cout << j.dump(2) << "\n";
        } else {
          std::cout << "ok\nregular = " << (reg ? "true" : "false")
                    << "\nsurjective = " << (surj ? "true" : "false") << "\n";
        }
      };
    });
  }

  // ---- map-compose --------------------------------------------------------
  {
    auto* cmd = app.add_subcommand("map-compose", "compose two factor maps");
    auto outer = std::make_shared<std::string>();
    auto inner = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    cmd->add_option("outer", *outer, "outer map file (F -> E)")->required();
    cmd->add_option("inner", *inner, "inner map file (G -> F)")->required();
    cmd->add_option("--out", *out, "write the composed map here");
    cmd->callback([&, outer, inner, out] {
      action = [&, outer, inner, out] {
        auto mo = load_map_file(*outer);
        auto mi = load_map_file(*inner);
        validate(mo);
        validate(mi);
        auto c = compose(mo, mi);
        validate(c);
        emit_json(map_to_json(c), *out);
      };
    });
  }

  // graph-producing commands share the --out convention
  auto add_graph_producer =
      [&](const std::string& name, const std::string& help,
          std::function<void(CLI::App*, std::shared_ptr<std::string>,
                             std::shared_ptr<std::string>)> setup) {
        auto* cmd = app.add_subcommand(name, help);
        auto path = std::make_shared<std::string>();
        auto out = std::make_shared<std::string>();
        cmd->add_option("graph", *path, "graph file")->required();
        cmd->add_option("--out", *out, "write the produced graph here");
        setup(cmd, path, out);
      };

  // ---- ey -----------------------------------------------------------------
  add_graph_producer("ey", "attach copies over a regular subset Y",
                     [&](CLI::App* cmd, auto path, auto out) {
                       auto y = std::make_shared<std::vector<std::string>>();
                       cmd->add_option("--y", *y, "vertices of Y")
                           ->delimiter(',');
                       cmd->callback([&, path, out, y] {
                         action = [&, path, out, y] {
                           auto g = load_graph_checked(*path);
                           emit_json(graph_to_json(attach_e_y(g, as_set(*y))), *out);
                         };
                       });
                     });

  // ---- toeplitz -----------------------------------------------------------
  add_graph_producer("toeplitz", "attach over every regular vertex",
                     [&](CLI::App* cmd, auto path, auto out) {
                       cmd->callback([&, path, out] {
                         action = [&, path, out] {
                           auto g = load_graph_checked(*path);
                           emit_json(graph_to_json(toeplitz_graph(g)), *out);
                         };
                       });
                     });

  // ---- subgraph -----------------------------------------------------------
  add_graph_producer("subgraph", "induced subgraph of edges into V",
                     [&](CLI::App* cmd, auto path, auto out) {
                       auto v = std::make_shared<std::vector<std::string>>();
                       cmd->add_option("--v", *v, "vertices of V")
                           ->delimiter(',');
                       cmd->callback([&, path, out, v] {
                         action = [&, path, out, v] {
                           auto g = load_graph_checked(*path);
                           emit_json(graph_to_json(subgraph_f_v(g, as_set(*v))), *out);
                         };
                       });
                     });

  // ---- defect -------------------------------------------------------------
  {
    auto* cmd = app.add_subcommand("defect", "obstruction of a subgraph inclusion");
    auto path = std::make_shared<std::string>();
    auto sub = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    cmd->add_option("graph", *path, "ambient graph file")->required();
    cmd->add_option("sub", *sub, "subgraph file")->required();
    cmd->add_option("--out", *out, "write the completed subgraph here");
    cmd->callback([&, path, sub, out] {
      action = [&, path, sub, out] {
        auto g = load_graph_checked(*path);
        auto s = load_graph_checked(*sub);
        auto report = subalgebra_defect(g, s);
        if (structured) {
          json j{{"y", set_to_json(report.y)},
                 {"completed", graph_to_json(report.completed)}};
          std::cout << j.dump(2) << "\n";
        } else {
          std::cout << "Y = " << join_set(report.y) << "\n";
        }
        if (!out->empty()) emit_json(graph_to_json(report.completed), *out);
      };
    });
  }

  // ---- hereditary ---------------------------------------------------------
  {
    auto* cmd = app.add_subcommand("hereditary", "test heredity of a vertex set");
    auto path = std::make_shared<std::string>();
    auto v = std::make_shared<std::vector<std::string>>();
    cmd->add_option("graph", *path, "graph file")->required();
    cmd->add_option("--v", *v, "vertices of V")->delimiter(',');
    cmd->callback([&, path, v] {
      action = [&, path, v] {
        auto g = load_graph_checked(*path);
        bool h = is_hereditary_v(g, as_set(*v));
        if (structured)
          std::cout << json{{"hereditary", h}}.dump(2) << "\n";
        else
          std::cout << "hereditary = " << (h ? "true" : "false") << "\n";
      };
    });
  }

  // ---- full ---------------------------------------------------------------
  {
    auto* cmd = app.add_subcommand("full", "fullness certificate for a hereditary set");
    auto path = std::make_shared<std::string>();
    auto v = std::make_shared<std::vector<std::string>>();
    cmd->add_option("graph", *path, "graph file")->required();
    cmd->add_option("--v", *v, "vertices of V")->delimiter(',');
    cmd->callback([&, path, v] {
      action = [&, path, v] {
        auto g = load_graph_checked(*path);
        auto r = is_full_v(g, as_set(*v));
        if (structured) {
          json j{{"full", r.full}};
          j["witness"] = json::object();
          for (const auto& [u, n] : r.witness) j["witness"][u] = n;
          if (!r.full) j["reason"] = r.reason;
          std::cout << j.dump(2) << "\n";
        } else {
          std::cout << "full = " << (r.full ? "true" : "false") << "\n";
          for (const auto& [u, n] : r.witness)
            std::cout << "n(" << u << ") = " << n << "\n";
          if (!r.full) std::cout << "reason: " << r.reason << "\n";
        }
      };
    });
  }

  // ---- amplify ------------------------------------------------------------
  add_graph_producer(
      "amplify", "attach N vertex-set copies (chain or star)",
      [&](CLI::App* cmd, auto path, auto out) {
        auto n = std::make_shared<std::size_t>(1);
        auto variant = std::make_shared<std::string>("chain");
        cmd->add_option("-n,--copies", *n, "number of copies")->required();
        cmd->add_option("--variant", *variant, "chain or star")
            ->check(CLI::IsMember({"chain", "star"}));
        cmd->callback([&, path, out, n, variant] {
          action = [&, path, out, n, variant] {
            auto g = load_graph_checked(*path);
            auto kind = (*variant == "chain") ? AmplifyVariant::chain
                                              : AmplifyVariant::star;
            emit_json(graph_to_json(amplify(g, *n, kind)), *out);
          };
        });
      });

  // ---- union --------------------------------------------------------------
  {
    auto* cmd = app.add_subcommand("union", "disjoint union of two graphs");
    auto a = std::make_shared<std::string>();
    auto b = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    cmd->add_option("left", *a, "first graph file")->required();
    cmd->add_option("right", *b, "second graph file")->required();
    cmd->add_option("--out", *out, "write the union here");
    cmd->callback([&, a, b, out] {
      action = [&, a, b, out] {
        auto ga = load_graph_checked(*a);
        auto gb = load_graph_checked(*b);
        emit_json(graph_to_json(disjoint_union(ga, gb)), *out);
      };
    });
  }

  // ---- product ------------------------------------------------------------
  add_graph_producer("product", "product with a finite discrete set",
                     [&](CLI::App* cmd, auto path, auto out) {
                       auto n = std::make_shared<std::size_t>(1);
                       cmd->add_option("-n,--size", *n, "size of the set")
                           ->required();
                       cmd->callback([&, path, out, n] {
                         action = [&, path, out, n] {
                           auto g = load_graph_checked(*path);
                           emit_json(graph_to_json(product_with_set(g, *n)), *out);
                         };
                       });
                     });

  // ---- compactify ---------------------------------------------------------
  add_graph_producer("compactify", "one-point compactification",
                     [&](CLI::App* cmd, auto path, auto out) {
                       cmd->callback([&, path, out] {
                         action = [&, path, out] {
                           auto g = load_graph_checked(*path);
                           emit_json(graph_to_json(one_point_compactify(g)), *out);
                         };
                       });
                     });

  // ---- system-validate ----------------------------------------------------
  {
    auto* cmd = app.add_subcommand("system-validate", "validate a projective system");
    auto path = std::make_shared<std::string>();
    cmd->add_option("system", *path, "system file")->required();
    cmd->callback([&, path] {
      action = [&, path] {
        auto s = load_system_file(*path);
        auto r = validate_system(s);
        if (structured) {
          json j{{"regular", r.regular}, {"surjective", r.surjective}};
          std::cout << j.dump(2) << "\n";
        } else {
          std::cout << "regular = " << (r.regular ? "true" : "false") << "\n"
                    << "surjective = " << (r.surjective ? "true" : "false") << "\n";
        }
      };
    });
  }

  // ---- limit --------------------------------------------------------------
  {
    auto* cmd = app.add_subcommand("limit", "realize a stationary projective limit");
    auto path = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    cmd->add_option("system", *path, "stationary system file")->required();
    cmd->add_option("--out", *out, "write the limit graph here");
    cmd->callback([&, path, out] {
      action = [&, path, out] {
        auto s = load_system_file(*path);
        if (!s.stationary())
          throw Error("PreconditionViolation", "limit needs a stationary system");
        validate_system(s);
        auto limit = stationary_limit(s.stage(0), s.map(0));
        if (!limit)
          throw Error("NotFinitelyRepresentable",
                      "the limit is an infinite pro-finite space");
        if (structured) {
          std::cout << graph_to_json(*limit).dump(2) << "\n";
        } else {
          std::ostringstream os;
          graph_text(os, *limit);
          std::cout << os.str();
        }
        if (!out->empty()) emit_json(graph_to_json(*limit), *out);
      };
    });
  }

  // ---- threads ------------------------------------------------------------
  {
    auto* cmd = app.add_subcommand("threads", "depth-bounded thread approximation");
    auto path = std::make_shared<std::string>();
    auto depth = std::make_shared<std::size_t>(0);
    cmd->add_option("system", *path, "system file")->required();
    cmd->add_option("--depth", *depth, "number of stages beyond the first")
        ->required();
    cmd->callback([&, path, depth] {
      action = [&, path, depth] {
        auto s = load_system_file(*path);
        validate_system(s);
        auto t = thread_approximation(s, *depth);
        auto tuple_text = [](const std::vector<std::string>& tu) {
          std::string line = "(";
          for (std::size_t i = 0; i < tu.size(); ++i) {
            if (i) line += ", ";
            line += tu[i];
          }
          return line + ")";
        };
        if (structured) {
          json j;
          j["vertex_threads"] = t.vertex_threads;
          j["edge_threads"] = t.edge_threads;
          j["real_vertex_threads"] = t.real_vertex_threads;
          j["real_edge_threads"] = t.real_edge_threads;
          std::cout << j.dump(2) << "\n";
        } else {
          std::cout << "vertex threads:\n";
          for (const auto& tu : t.vertex_threads)
            std::cout << "  " << tuple_text(tu) << "\n";
          std::cout << "edge threads:\n";
          for (const auto& tu : t.edge_threads)
            std::cout << "  " << tuple_text(tu) << "\n";
          std::cout << "real vertex threads = " << t.real_vertex_threads << "\n"
                    << "real edge threads = " << t.real_edge_threads << "\n";
        }
      };
    });
  }

  // ---- obstruction --------------------------------------------------------
  {
    auto* cmd = app.add_subcommand("obstruction", "the sets O and Y of a system");
    auto path = std::make_shared<std::string>();
    cmd->add_option("system", *path, "system file")->required();
    cmd->callback([&, path] {
      action = [&, path] {
        auto s = load_system_file(*path);
        validate_system(s);
        if (s.stationary()) {
          auto limit = stationary_limit(s.stage(0), s.map(0));
          if (!limit)
            throw Error("NotFinitelyRepresentable",
                        "the limit is an infinite pro-finite space");
          auto r = obstruction_report(s.stage(0), s.map(0), *limit);
          if (structured) {
            json j{{"open_set", set_to_json(r.open_set)}, {"y", set_to_json(r.y)}};
            std::cout << j.dump(2) << "\n";
          } else {
            std::cout << "O = " << join_set(r.open_set) << "\n"
                      << "Y = " << join_set(r.y) << "\n";
          }
        } else {
          auto r = approx_obstruction(s);
          if (structured) {
            json j{{"stages_used", r.stages_used},
                   {"open_set", set_to_json(r.open_set)}};
            std::cout << j.dump(2) << "\n";
          } else {
            std::cout << "O computed from " << r.stages_used << " stages\n"
                      << "O = " << join_set(r.open_set) << "\n";
          }
        }
      };
    });
  }

  // ---- report -------------------------------------------------------------
  {
    auto* cmd = app.add_subcommand("report", "full stationary limit report");
    auto graph = std::make_shared<std::string>();
    auto map = std::make_shared<std::string>();
    auto stationary = std::make_shared<bool>(false);
    cmd->add_flag("--stationary", *stationary, "treat inputs as graph + self-map");
    cmd->add_option("graph", *graph, "graph file")->required();
    cmd->add_option("map", *map, "self-factor-map file")->required();
    cmd->callback([&, graph, map, stationary] {
      action = [&, graph, map, stationary] {
        if (!*stationary)
          throw Error("PreconditionViolation", "report requires --stationary");
        auto g = load_graph_checked(*graph);
        auto m = load_map_file(*map);
        validate(m);
        auto r = limit_algebra_report(g, m);
        auto algebra_text = [](const std::optional<AlgebraExpr>& a) {
          return a ? a->to_string() : std::string("(not finite-dimensional)");
        };
        if (structured) {
          json j;
          j["limit"] = r.limit ? graph_to_json(*r.limit) : json();
          j["y"] = set_to_json(r.obstruction_y);
          j["open_set"] = set_to_json(r.obstruction_open);
          j["e_y"] = r.e_y ? graph_to_json(*r.e_y) : json();
          j["colim_is_limit_algebra"] = r.colim_isomorphic_to_limit_algebra;
          j["limit_algebra"] =
              r.limit_algebra ? json(r.limit_algebra->summands()) : json();
          j["colim_algebra"] =
              r.colim_algebra ? json(r.colim_algebra->summands()) : json();
          std::cout << j.dump(2) << "\n";
          return;
        }
        if (!r.limit) {
          std::cout << "limit: NotFinitelyRepresentable\n";
          return;
        }
        std::cout << "limit:\n";
        std::ostringstream os;
        graph_text(os, *r.limit);
        std::cout << os.str();
        std::cout << "Y = " << join_set(r.obstruction_y) << "\n";
        std::cout << "E_Y:\n";
        std::ostringstream os2;
        graph_text(os2, *r.e_y);
        std::cout << os2.str();
        std::cout << "colim \u2245 O(E_Y)\n"
                  << "O(limit) \u2245 " << algebra_text(r.limit_algebra) << "\n"
                  << "colim \u2245 " << algebra_text(r.colim_algebra) << "\n"
                  << "colim \u2245 O(limit): "
                  << (r.colim_isomorphic_to_limit_algebra ? "true" : "false")
                  << "\n";
      };
    });
  }

  // ---- bratteli -----------------------------------------------------------
  {
    auto* cmd = app.add_subcommand("bratteli", "convert levelled data and systems");
    cmd->require_subcommand(1);
    {
      auto* imp = cmd->add_subcommand("import", "levelled data -> explicit system");
      auto path = std::make_shared<std::string>();
      auto out = std::make_shared<std::string>();
      imp->add_option("data", *path, "levelled data file")->required();
      imp->add_option("--out", *out, "write the system here");
      imp->callback([&, path, out] {
        action = [&, path, out] {
          auto b = load_bratteli_file(*path);
          auto s = bratteli_to_system(b);
          emit_json(system_to_json(s), *out);
        };
      });
    }
    {
      auto* exp = cmd->add_subcommand("export", "line-shaped system -> levelled data");
      auto path = std::make_shared<std::string>();
      auto out = std::make_shared<std::string>();
      exp->add_option("system", *path, "system file")->required();
      exp->add_option("--out", *out, "write the levelled data here");
      exp->callback([&, path, out] {
        action = [&, path, out] {
          auto s = load_system_file(*path);
          emit_json(bratteli_to_json(recover_bratteli(s)), *out);
        };
      });
    }
  }

  // ---- identify -----------------------------------------------------------
  {
    auto* cmd = app.add_subcommand("identify", "finite-dimensional identification");
    auto path = std::make_shared<std::string>();
    cmd->add_option("graph", *path, "graph file")->required();
    cmd->callback([&, path] {
      action = [&, path] {
        auto a = identify_finite_dim(load_graph_checked(*path));
        if (structured)
          std::cout << json{{"summands", a.summands()}}.dump(2) << "\n";
        else
          std::cout << a.to_string() << "\n";
      };
    });
  }

  // ---- dot ----------------------------------------------------------------
  {
    auto* cmd = app.add_subcommand("dot", "Graphviz rendering");
    auto path = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    cmd->add_option("graph", *path, "graph file")->required();
    cmd->add_option("--out", *out, "write the DOT text here");
    cmd->callback([&, path, out] {
      action = [&, path, out] { emit_text(to_dot(load_graph_checked(*path)), *out); };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  structured = (format == "structured");
  try {
    action();
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const ParseError& e) {
    std::cerr << "ParseError: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "ParseError: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
