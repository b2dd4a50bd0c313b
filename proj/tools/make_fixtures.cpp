// Writes the fixture corpus under data/.
#include <iostream>
#include <string>

#include "fixtures.hpp"
#include "fractile/io.hpp"

using namespace fractile;

int main(int argc, char** argv) {
    const std::string dir = argc > 1 ? argv[1] : "data";
    const std::pair<const char*, Generator> gens[] = {
        {"sierpinski", fixtures::sierpinski()}, {"l_shape", fixtures::l_shape()},
        {"mirrored_l", fixtures::mirrored_l()}, {"full_square", fixtures::full_square()},
        {"diagonal", fixtures::diagonal()},     {"t_shape", fixtures::t_shape()},
    };
    for (const auto& [name, gen] : gens) write_file(dir + "/" + name + ".gen", write_generator(gen));

    const Generator s = fixtures::sierpinski();
    write_file(dir + "/sierpinski_shared_pier.tas", write_tas(fixtures::pier_line_system(s, 1, 4, false)));
    write_file(dir + "/sierpinski_stage_indexed.tas", write_tas(fixtures::pier_line_system(s, 1, 4, true)));
    write_file(dir + "/ribbon.tas", write_tas(fixtures::ribbon()));
    write_file(dir + "/all_glue.tas", write_tas(fixtures::all_glue(1, 1)));
    std::cout << "fixtures written to " << dir << '\n';
    return 0;
}
