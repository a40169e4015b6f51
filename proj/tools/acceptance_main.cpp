// Acceptance harness: runs the criteria and prints one pass/fail line each.
// Usage: acceptance [--only 2,3]

#include <cstdlib>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "fols/selftest.hpp"

int main(int argc, char** argv) {
    std::set<int> only;
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        if (arg == "--only" && i + 1 < argc) {
            std::istringstream is(argv[++i]);
            std::string tok;
            while (std::getline(is, tok, ',')) only.insert(std::atoi(tok.c_str()));
        } else {
            std::cerr << "usage: acceptance [--only <ids>]\n";
            return 2;
        }
    }
    auto results = fols::run_acceptance(only);
    int failures = fols::print_results(results, std::cout);
    return failures == 0 ? 0 : 1;
}
