import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    globalSetup: ["./test/global-setup.ts"],
    testTimeout: 120000,
    hookTimeout: 180000,
    fileParallelism: false,
  },
});
