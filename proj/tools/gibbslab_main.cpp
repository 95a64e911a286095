// Command-line front end; see README for the subcommands.
#include <cstdio>

#include "gibbslab/runner.hpp"

int main(int argc, char** argv) {
    try {
        const gibbslab::RunConfig cfg = gibbslab::parse_config(argc, argv);
        return gibbslab::run(cfg);
    } catch (const gibbslab::UsageError& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return gibbslab::kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return gibbslab::kExitUsage;
    }
}
