#include <orbitsolve/suites.hpp>

#include <chrono>
#include <iostream>

using namespace orbitsolve;

namespace
{
    auto print(const suites::Report & r, double seconds) -> void
    {
        std::cout << (r.passed() ? "PASS" : "FAIL") << "  criterion " << r.criterion << "  " << r.suite << "  (" << seconds << " s)\n";
        for (auto & c : r.checks)
            if (! c.passed)
                std::cout << "      " << (c.required ? "failed: " : "note: ") << c.name << (c.detail.empty() ? "" : " -- " + c.detail) << "\n";
    }
}

int main()
{
    using clock = std::chrono::steady_clock;
    std::vector<suites::Report> reports;
    bool all = true;
    auto timed = [&](auto && fn) {
        auto start = clock::now();
        auto r = fn();
        double s = std::chrono::duration<double>(clock::now() - start).count();
        print(r, s);
        all = all && r.passed();
        return r;
    };
    for (auto & name : suites::names()) {
        if (name == "monotonicity" || name == "determinism")
            continue;
        reports.push_back(timed([&] { return suites::run(name); }));
    }
    timed([&] { return suites::monotonicity(reports); });
    timed([&] { return suites::determinism(reports); });
    std::cout << (all ? "all criteria passed" : "some criteria failed") << "\n";
    return all ? 0 : 1;
}
