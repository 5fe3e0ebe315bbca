#include "hapd/run_config.hpp"

#include "hapd/keyvalue.hpp"

#include <filesystem>

namespace hapd {

RunConfig load_run_config(const std::string& path) {
    KeyValueFile kv = KeyValueFile::load(path);
    RunConfig cfg;

    const std::filesystem::path base = std::filesystem::path(path).parent_path();
    auto resolve = [&base](const std::string& p) {
        std::filesystem::path f(p);
        return f.is_absolute() ? f.string() : (base / f).string();
    };
    cfg.params_path = resolve(kv.get_string("files.params"));
    cfg.coeffs_path = resolve(kv.get_string("files.coeffs"));

    cfg.vtas_min = kv.get_double_or("grid.vtas_min", cfg.vtas_min);
    cfg.vtas_max = kv.get_double_or("grid.vtas_max", cfg.vtas_max);
    cfg.vtas_count = kv.get_int_or("grid.vtas_count", cfg.vtas_count);
    cfg.alt_min = kv.get_double_or("grid.alt_min", cfg.alt_min);
    cfg.alt_max = kv.get_double_or("grid.alt_max", cfg.alt_max);
    cfg.alt_count = kv.get_int_or("grid.alt_count", cfg.alt_count);

    cfg.ts = kv.get_double_or("discretize.ts", cfg.ts);
    cfg.sim_step = kv.get_double_or("sim.step", cfg.sim_step);
    const int seed = kv.get_int_or("sim.seed", 0);
    if (seed < 0) throw ParseError(path, kv.line_of("sim.seed"), "sim.seed must be >= 0");
    cfg.seed = static_cast<uint64_t>(seed);

    cfg.out_dir = kv.get_string_or("out.dir", cfg.out_dir);
    kv.finish();
    return cfg;
}

}  // namespace hapd
