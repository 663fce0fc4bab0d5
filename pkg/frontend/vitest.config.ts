import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    include: ["tests/**/*.test.ts"],
    testTimeout: 120_000,
    hookTimeout: 60_000,
    // integration suites spawn one server each; keep them off shared ports
    fileParallelism: false,
  },
});
