#pragma once

// Round-trip corpus over m = 2, n = 3. Polynomial sources first, then Gaussian-enveloped ones.

#include <string>
#include <vector>

namespace corpus {

inline const std::vector<std::string>& polynomial_sources() {
    static const std::vector<std::string> sources{
        "0",
        "1",
        "-1",
        "3/2",
        "-7/12",
        "0.125",
        "i",
        "-i",
        "1/3i",
        "(2-3i)",
        "(1/2+1/2i)*w1^2*th1*th2",
        "x1",
        "w1",
        "th1",
        "th3",
        "x1*th1 + 2",
        "th1*th1",
        "th2*th1",
        "th1*th2*th3",
        "th3*th2*th1 + th1*th2*th3",
        "x1^2",
        "x1^10",
        "w1^3 - 3*w1",
        "x1*w1 - w1*x1",
        "(x1 + w1)^2",
        "(x1 - w1)^3",
        "(x1 + th1)^2",
        "(th1 + th2)*(th1 - th2)",
        "-x1^2",
        "-(x1 + 1)",
        "--x1",
        "+x1",
        "2*3*x1",
        "x1*x1*x1*w1",
        "(1 + i)*(1 - i)",
        "1/2*x1 + 1/3*w1 + 1/6*th1",
        "x1*th1*w1*th2",
        "th1*x1 - x1*th1",
        "(x1*th1 + w1*th2)*(x1*th2 - w1*th1)",
        "((x1))",
        "(((th1 + 1)))^2",
        "x1^0",
        "th1^1",
        "5/10*x1",
        "100000000000000000000*x1",
        "1/100000000000000000000*w1",
        "-3/4i*x1*w1*th1*th2*th3",
        "x1 + w1 + th1 + th2 + th3",
        "(x1 + 1)^4*th1",
        "x1\n  + w1",
        " x1 *  th2 ",
        "1.5*x1 - 2.25*w1",
        "(x1 + i*w1)*(x1 - i*w1)",
        "(3 + 4i)*th2*th3 - (3 - 4i)*th3*th2",
    };
    return sources;
}

inline const std::vector<std::string>& gauss_sources() {
    static const std::vector<std::string> sources{
        "gauss(1, 1)",
        "gauss(1, 2)*(x1 + 1)",
        "gauss(3/2, 1/2)*x1*th1 + gauss(3/2, 1/2)*w1^2",
        "gauss(2, 2)*(1/2 - i*x1*w1)*th1*th2",
        "gauss(1, 1)*th3 - gauss(1, 1)*x1^2*th1*th2*th3",
    };
    return sources;
}

}  // namespace corpus
