#include "warplab/cli.hpp"

int main(int argc, char** argv) {
    return warplab::run_cli(argc, argv);
}
