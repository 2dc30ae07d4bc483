#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include "coexplore/error.hpp"
#include "coexplore/explorer.hpp"
#include "coexplore/server.hpp"
#include "coexplore/util.hpp"

namespace fs = std::filesystem;
using namespace coexplore;

namespace {

struct CommonOptions {
  std::string scripted_dir;
  std::string corpus;
  std::string data_dir;
  std::string log_level = "warn";
};

void add_common(CLI::App& app, CommonOptions& o) {
  app.add_option("--scripted", o.scripted_dir, "Serve completions from this fixture directory");
  app.add_option("--corpus", o.corpus, "Offline corpus JSON (default: CORPUS_PATH or the bundled corpus)");
  app.add_option("--data-dir", o.data_dir, "Session directory (default: DATA_DIR)");
  app.add_option("--log-level", o.log_level, "trace|debug|info|warn|error")->capture_default_str();
}

struct Backends {
  std::shared_ptr<llm::LlmGateway> gateway;
  std::shared_ptr<scholar::ScholarClient> scholar;
};

Backends make_backends(const CommonOptions& o) {
  auto llm_config = llm::ProviderConfig::from_env();
  if (!o.scripted_dir.empty()) {
    llm_config.mode = llm::ProviderMode::Scripted;
    llm_config.fixture_dir = o.scripted_dir;
  } else if (llm_config.mode == llm::ProviderMode::Scripted && llm_config.fixture_dir.empty()) {
    llm_config.fixture_dir = COEXPLORE_DEFAULT_FIXTURE_DIR;
  }
  auto scholar_config = scholar::ScholarConfig::from_env();
  if (!o.corpus.empty()) scholar_config.corpus_path = o.corpus;
  if (scholar_config.mode == scholar::ScholarMode::Corpus && scholar_config.corpus_path.empty()) {
    scholar_config.corpus_path = COEXPLORE_DEFAULT_CORPUS;
  }
  return {llm::make_gateway(llm_config), std::make_shared<scholar::ScholarClient>(scholar_config)};
}

fs::path fresh_temp_dir() {
  std::random_device rd;
  for (;;) {
    auto p = fs::temp_directory_path() / ("coexplore-" + std::to_string(rd()));
    if (fs::create_directory(p)) return p;
  }
}

int run_explore(const CommonOptions& o, const std::string& topic, std::size_t max_fields, const std::string& out,
                std::string format, bool collect) {
  bool temp = false;
  fs::path data_dir = o.data_dir;
  if (data_dir.empty()) data_dir = util::env_or("DATA_DIR", "");
  if (data_dir.empty()) {
    data_dir = fresh_temp_dir();
    temp = true;
  }
  if (format.empty()) format = fs::path(out).extension() == ".json" ? "json" : "markdown";
  const auto outline_format = api::outline_format_from_string(format);

  std::string document;
  {
    session::SessionStore store(data_dir);
    api::ExplorerConfig config;
    config.eq.max_fields = max_fields;
    auto backends = make_backends(o);
    api::Explorer explorer(store, backends.gateway, backends.scholar, config);

    const auto session_id = explorer.create_session(topic).session_id;
    const auto eqs = explorer.generate_topic_eqs(session_id);
    spdlog::info("generated {} exploratory questions", eqs.size());

    std::vector<std::string> jobs;
    for (const auto& eq : eqs) {
      explorer.update_eq(session_id, eq.id, std::nullopt, true);
      jobs.push_back(explorer.start_explore(session_id, eq.id));
    }
    int failed = 0;
    for (const auto& job_id : jobs) {
      const auto job = explorer.wait(job_id);
      if (job.status == api::JobStatus::Failed) {
        std::cerr << "explore " << job.eq_id << " failed in " << job.stage.value_or("?") << ": "
                  << job.error.value_or("") << "\n";
        ++failed;
      }
    }
    if (failed) return 1;

    if (collect) {
      const auto state = explorer.load(session_id);
      for (const auto& eq : state.eqs) {
        for (const auto& theme : state.explorations.at(eq.id).themes.themes) {
          explorer.apply_edit(session_id, session::DropTheme{eq.id, theme.id});
        }
      }
    }
    document = explorer.export_outline(session_id, outline_format);
  }
  if (temp) fs::remove_all(data_dir);

  if (out.empty() || out == "-") {
    std::cout << document;
  } else {
    util::atomic_write_file(out, document);
    spdlog::info("wrote {}", out);
  }
  return 0;
}

api::ApiServer* g_server = nullptr;

int run_serve(const CommonOptions& o, std::string bind_addr) {
  if (bind_addr.empty()) bind_addr = util::env_or("BIND_ADDR", "127.0.0.1:8080");
  const auto [host, port] = api::parse_bind_addr(bind_addr);
  fs::path data_dir = o.data_dir.empty() ? util::env_or("DATA_DIR", "coexplore-data") : o.data_dir;

  session::SessionStore store(data_dir);
  auto backends = make_backends(o);
  api::Explorer explorer(store, backends.gateway, backends.scholar);
  api::ApiServer server(explorer);
  if (!server.bind(host, port)) {
    std::cerr << "cannot bind " << bind_addr << "\n";
    return 1;
  }
  g_server = &server;
  std::signal(SIGINT, [](int) {
    if (g_server) g_server->stop();
  });
  std::signal(SIGTERM, [](int) {
    if (g_server) g_server->stop();
  });
  spdlog::info("listening on {}:{}, sessions in {}", host, port, data_dir.string());
  std::cerr << "listening on http://" << host << ":" << port << "/api/v1\n";
  server.listen();
  g_server = nullptr;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Co-exploration of interdisciplinary literature"};
  app.require_subcommand(1);

  CommonOptions common;
  std::string topic, out, format;
  std::size_t max_fields = eq::EqEngineConfig{}.max_fields;
  bool no_collect = false;
  auto* explore = app.add_subcommand("explore", "Run topic -> EQs -> explore all -> export headlessly");
  explore->add_option("--topic", topic, "Research topic")->required();
  explore->add_option("--max-fields", max_fields, "Fields to consider")
      ->capture_default_str()
      ->check(CLI::Range(std::size_t{1}, eq::kMaxFieldsHardCap));
  explore->add_option("--out", out, "Output file, '-' for stdout")->capture_default_str();
  explore->add_option("--format", format, "json|markdown (default: from --out extension)")
      ->check(CLI::IsMember({"json", "markdown"}));
  explore->add_flag("--no-collect", no_collect, "Do not turn themes into collections before exporting");
  add_common(*explore, common);

  std::string bind_addr;
  auto* serve = app.add_subcommand("serve", "Run the HTTP API");
  serve->add_option("--bind", bind_addr, "host:port (default: BIND_ADDR or 127.0.0.1:8080)");
  add_common(*serve, common);

  CLI11_PARSE(app, argc, argv);
  spdlog::set_level(spdlog::level::from_str(common.log_level));

  try {
    if (*explore) return run_explore(common, topic, max_fields, out, format, !no_collect);
    return run_serve(common, bind_addr);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
