// SPDX-License-Identifier: Apache-2.0
//
// beamsquint - subband beam-squint compensation and repeater-assisted RAN simulation
// Copyright (C) 2026 The beamsquint authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Command-line front end over the shared library's C interface
#include <beamsquint/beamsquint.h>

#include <CLI11.hpp>

#include <cstdio>
#include <string>

namespace
{
    constexpr int exit_config = 2;
    constexpr int exit_runtime = 3;

    int report(bsq_status st)
    {
        if (st == BSQ_OK)
            return 0;
        std::fprintf(stderr, "error: %s\n", bsq_last_error());
        return st == BSQ_ERR_RUNTIME ? exit_runtime : exit_config;
    }

    void print_log(int level, const char *msg, void *)
    {
        std::fprintf(stderr, "%s%s\n", level == 1 ? "warning: " : "", msg);
    }

    struct Handle
    {
        bsq_config *cfg = nullptr;
        ~Handle() { bsq_config_destroy(cfg); }
    };
}

int main(int argc, char **argv)
{
    CLI::App app{"Subband beam-squint compensation and repeater-assisted downlink simulation"};
    app.set_version_flag("--version", std::string(bsq_version()));
    app.require_subcommand(1);

    std::string config_path, out_dir = "out";
    std::uint64_t seed = 0;
    std::size_t drops = 0, threads = 0;
    bool quiet = false;

    auto add_common = [&](CLI::App *sub, bool with_out) {
        sub->add_option("--config", config_path, "JSON configuration file")->required()->check(CLI::ExistingFile);
        if (with_out)
            sub->add_option("--out", out_dir, "output directory")->capture_default_str();
        sub->add_flag("--quiet", quiet, "suppress progress messages");
    };

    auto *pattern = app.add_subcommand("pattern", "beam gain traces versus angle");
    add_common(pattern, true);
    auto *sweep = app.add_subcommand("sweep-offset", "gain toward the design direction versus frequency offset");
    add_common(sweep, true);
    auto *simulate = app.add_subcommand("simulate", "system-level drop matrix");
    add_common(simulate, true);
    auto *seed_opt = simulate->add_option("--seed", seed, "random seed (overrides the config)");
    auto *drops_opt = simulate->add_option("--drops", drops, "number of drops (overrides the config)")
                          ->check(CLI::PositiveNumber);
    auto *threads_opt = simulate->add_option("--threads", threads, "worker threads (overrides the config)")
                            ->check(CLI::PositiveNumber);
    auto *validate = app.add_subcommand("validate-config", "check a configuration and print its canonical form");
    add_common(validate, false);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_config;
    }

    bsq_set_log_callback(quiet ? nullptr : print_log, nullptr);

    Handle h;
    if (const auto st = bsq_config_load(config_path.c_str(), &h.cfg); st != BSQ_OK)
        return report(st);

    if (*validate)
    {
        std::size_t needed = 0;
        if (const auto st = bsq_config_serialize(h.cfg, nullptr, 0, &needed); st != BSQ_OK)
            return report(st);
        std::string text(needed, '\0');
        if (const auto st = bsq_config_serialize(h.cfg, text.data(), text.size(), &needed); st != BSQ_OK)
            return report(st);
        std::fputs(text.c_str(), stdout);
        return 0;
    }
    if (*pattern)
        return report(bsq_run_pattern(h.cfg, out_dir.c_str()));
    if (*sweep)
        return report(bsq_run_sweep_offset(h.cfg, out_dir.c_str()));

    bsq_run_options opts{};
    opts.has_seed = seed_opt->count() > 0;
    opts.seed = seed;
    opts.has_drops = drops_opt->count() > 0;
    opts.drops = drops;
    opts.has_threads = threads_opt->count() > 0;
    opts.threads = threads;
    return report(bsq_run_simulate(h.cfg, out_dir.c_str(), &opts));
}
