"""Quick start script to verify setup and run a small end-to-end demo"""

import sys
from pathlib import Path

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from loguru import logger


def check_terrain():
    """Generate a small WP-Fixed terrain and its preset waypoints"""
    logger.info("Generating WP-Fixed terrain...")

    try:
        from src.terrain import UnitKind, generate_wp_fixed
        from src.waypoints import preset_fixed_waypoints

        kinds = [UnitKind.GAP, UnitKind.BOX, UnitKind.HURDLE, UnitKind.OBSTACLE]
        grid = generate_wp_fixed(2, 4, kinds, seed=0)
        tracks = preset_fixed_waypoints(grid)
        logger.info(f"  ✓ {grid.track_count} tracks, {grid.rows * grid.cols} units")
        logger.info(f"  ✓ {sum(len(t) for t in tracks)} preset waypoints\n")
        return True

    except Exception as e:
        logger.error(f"  ✗ Error generating terrain: {e}\n")
        return False


def run_omni_demo():
    """Omni-traverse on the flat arena with a handful of robots"""
    logger.info("Running omni-traverse demo...")

    try:
        from src.evaluation import omni_traverse_spec, run_omni_traverse

        spec = omni_traverse_spec(robots=6)
        _, metrics, heatmap = run_omni_traverse(spec)
        logger.info(f"  ✓ SR={metrics.sr:.2f} ATD={metrics.atd:.1f} m AST={metrics.ast_text} s")
        logger.info(f"  ✓ Heatmap with {heatmap.total} samples\n")
        return metrics.sr == 1.0

    except Exception as e:
        logger.error(f"  ✗ Error in omni demo: {e}\n")
        return False


def run_navigation_demo():
    """A* planning around a wall, then waypoint tracking"""
    logger.info("Running hierarchical navigation demo...")

    try:
        from src.evaluation import run_hierarchical
        from src.planner import get_planner
        from src.terrain import UnitKind, build_custom_grid, wall

        layout = [[UnitKind.FLAT] * 4 for _ in range(4)]
        grid = build_custom_grid(layout, unit_size=2.0, extra_features=[wall(3.9, 0.0, 4.1, 5.5)])
        planner = get_planner("astar", max_gap=1.0)
        log = run_hierarchical(grid, planner, (1.0, 1.0), (7.0, 1.0), inflation_margin=0.5)
        logger.info(f"  ✓ {len(log.waypoints_used)} waypoints, outcome {log.outcome.value}\n")
        return log.succeeded

    except Exception as e:
        logger.error(f"  ✗ Error in navigation demo: {e}\n")
        return False


def main():
    """Main quick start function"""

    print("\n" + "="*80)
    print("Hierarchical Navigation Sandbox - Quick Start")
    print("="*80 + "\n")

    # Run checks
    checks = {
        "Terrain": check_terrain(),
        "Omni Traverse": run_omni_demo(),
        "Navigation": run_navigation_demo()
    }

    # Summary
    print("="*80)
    print("Setup Summary")
    print("="*80)

    for check_name, passed in checks.items():
        status = "✓ PASS" if passed else "✗ FAIL"
        print(f"  {status} - {check_name}")

    print("="*80)

    if all(checks.values()):
        print("\n🎉 All checks passed! Your setup is ready.")
        print("\nNext steps:")
        print("  1. Generate terrain: python -m src.main generate -c configs/wp_fixed.yaml")
        print("  2. Evaluate: python -m src.main eval omni -c configs/arena.yaml")
        print("  3. Navigate: python -m src.main navigate -c configs/maze.yaml --planner astar")
    else:
        print("\n⚠ Some checks failed. Please fix the issues above.")
        print("  Missing modules: pip install -r requirements.txt")

    print("\n" + "="*80 + "\n")


if __name__ == "__main__":
    main()
